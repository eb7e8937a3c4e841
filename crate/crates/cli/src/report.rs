//! The JSON report every subcommand writes, and re-verification of the
//! certificates it carries.

use cellgap::complex::FreeChainComplex;
use cellgap::kzero::registry::Registry;
use cellgap::kzero::{KZeroRep, Triviality, TrivialityReport};
use cellgap::silence::SilenceCertificate;
use cellgap::transform::HomotopyCertificate;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::inputs::InputHash;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub format: u32,
    pub command: String,
    pub inputs: Vec<InputHash>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<InputHash>,
    pub verdicts: Map<String, Value>,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    /// Present only when timing was requested; the rest of the report is reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub wall_ms: u128,
}

/// A certificate together with everything needed to re-check it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Silence {
        complex: FreeChainComplex,
        certificate: SilenceCertificate,
    },
    Homotopy {
        source: FreeChainComplex,
        target: FreeChainComplex,
        certificate: HomotopyCertificate,
    },
    Triviality {
        class: KZeroRep,
        report: TrivialityReport,
    },
}

impl Certificate {
    pub fn silence(c: &FreeChainComplex, cert: &SilenceCertificate) -> Self {
        Certificate::Silence {
            complex: c.clone(),
            certificate: cert.clone(),
        }
    }

    pub fn triviality(r: &KZeroRep, report: &TrivialityReport) -> Self {
        Certificate::Triviality {
            class: r.clone(),
            report: report.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Certificate::Silence { certificate, .. } => format!("silence in degree {}", certificate.degree),
            Certificate::Homotopy { certificate, .. } => {
                format!("homotopy equivalence on degrees {}..{}", certificate.bottom, certificate.top())
            }
            Certificate::Triviality { report, .. } => match report.verdict {
                Triviality::Yes => "class is trivial".to_string(),
                Triviality::Unknown => "class triviality unknown".to_string(),
            },
        }
    }

    /// Products and comparisons only; no solver runs here.
    pub fn verify(&self, registry: &Registry) -> Result<(), String> {
        match self {
            Certificate::Silence { complex, certificate } => certificate.verify(complex),
            Certificate::Homotopy {
                source,
                target,
                certificate,
            } => certificate.verify(source, target),
            Certificate::Triviality { class, report } => report.certificate.verify(class, registry),
        }
    }
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            format: FORMAT_VERSION,
            command: command.to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            verdicts: Map::new(),
            certificates: Vec::new(),
            timing: None,
        }
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("verdicts serialize");
        self.verdicts.insert(key.to_string(), v);
    }
}

/// Parses a report; certificates carry complexes and classes, so this runs
/// the same validation as reading those files directly.
pub fn read_report(text: &str) -> serde_json::Result<RunReport> {
    serde_json::from_str(text)
}
