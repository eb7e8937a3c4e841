use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use cellgap::complex::{cohomology_local, FreeChainComplex};
use cellgap::config::Config;
use cellgap::format::{write_class, write_complex, write_json};
use cellgap::group::GroupData;
use cellgap::kzero::registry::Registry;
use cellgap::kzero::tate::{tate_z2, Parity};
use cellgap::kzero::{check_self_dual, class_is_trivial, obstruction, Triviality};
use cellgap::module::{FPModule, LatticeModule};
use cellgap::realize::{realize_finite, realize_stage, RealizationInput};
use cellgap::silence::{silent_in_degree, silent_in_range, SilenceCertificate};
use cellgap::transform::product::sphere;
use cellgap::transform::{
    cancel_gap, dualize, pair_additivity, poincare_self_duality_check, product_formula_check, relative_duality_check,
    tensor_product,
};
use serde_json::{json, Value};

use cellgap_cli::inputs::{sha256_hex, InputHash, Inputs};
use cellgap_cli::report::{read_report, Certificate, RunReport, Timing};
use crate::{Cli, Coefficients, Command, ParityArg};

struct Ctx {
    inputs: Inputs,
    config: Config,
    registry: Registry,
    report: RunReport,
    status: u8,
}

impl Ctx {
    fn write(&mut self, role: &str, path: &Path, text: &str) -> Result<()> {
        std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
        self.report.outputs.push(InputHash {
            role: role.to_string(),
            path: path.display().to_string(),
            sha256: sha256_hex(text.as_bytes()),
        });
        Ok(())
    }

    /// Writes the complex if a path is given, otherwise inlines it in the report.
    fn complex_out(&mut self, key: &str, path: Option<&Path>, c: &FreeChainComplex) -> Result<()> {
        match path {
            Some(p) => self.write(key, p, &write_complex(c)),
            None => {
                self.report.verdict(key, c);
                Ok(())
            }
        }
    }

    fn silence(&mut self, c: &FreeChainComplex, cert: &SilenceCertificate) {
        self.report.certificates.push(Certificate::silence(c, cert));
    }

    /// Records a failed silence precondition as the answer, with its certificate
    /// attached to whichever candidate complex it belongs to.
    fn not_silent(&mut self, cert: &SilenceCertificate, candidates: &[&FreeChainComplex]) {
        self.report.verdict("verdict", "not-silent");
        self.report.verdict("failed_degree", cert.degree);
        if let Some(c) = candidates.iter().find(|c| cert.verify(c).is_ok()) {
            self.silence(c, cert);
        }
    }
}

fn silence_summary(cert: &SilenceCertificate) -> Value {
    json!({
        "degree": cert.degree,
        "verdict": cert.kind,
        "failed": cert.failed,
        "counterexample": cert.counterexample.as_ref().map(|c| c.description.clone()),
    })
}

fn parity(p: ParityArg) -> Parity {
    match p {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    }
}

fn factor(ctx: &Ctx, spec: &str) -> Result<FreeChainComplex> {
    if spec == "point" {
        return Ok(FreeChainComplex::point(Arc::new(GroupData::trivial())));
    }
    if let Some(a) = spec.strip_prefix('S').and_then(|a| a.parse::<usize>().ok()) {
        if a > 64 {
            bail!("sphere dimension {a} is too large");
        }
        return Ok(sphere(a));
    }
    ctx.inputs.complex("factor", Path::new(spec))
}

pub fn run(cli: &Cli) -> Result<(RunReport, u8)> {
    let start = Instant::now();
    let inputs = Inputs::default();
    let config = inputs.config(cli.config.as_deref())?;
    let registry = config.registry();
    let name = command_name(&cli.command);
    let mut ctx = Ctx {
        inputs,
        config,
        registry,
        report: RunReport::new(name),
        status: 0,
    };
    dispatch(&mut ctx, &cli.command)?;
    let mut report = ctx.report;
    report.inputs = ctx.inputs.hashes();
    if cli.timing || ctx.config.timing {
        report.timing = Some(Timing {
            wall_ms: start.elapsed().as_millis(),
        });
    }
    Ok((report, ctx.status))
}

pub fn emit(cli: &Cli, report: &RunReport) -> Result<()> {
    let text = write_json(report);
    match &cli.report {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.context("cannot write the report"),
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Homology { .. } => "homology",
        Command::Cohomology { .. } => "cohomology",
        Command::Silence { .. } => "silence",
        Command::Obstruction { .. } => "obstruction",
        Command::Realize { .. } => "realize",
        Command::Dualize { .. } => "dualize",
        Command::Product { .. } => "product",
        Command::Cancel { .. } => "cancel",
        Command::PairCheck { .. } => "pair-check",
        Command::RelDuality { .. } => "rel-duality",
        Command::Tate { .. } => "tate",
        Command::SelfDual { .. } => "self-dual",
        Command::VerifyCertificate { .. } => "verify-certificate",
    }
}

fn dispatch(ctx: &mut Ctx, command: &Command) -> Result<()> {
    let lim = ctx.config.search.clone();
    match command {
        Command::Validate { complex } => {
            let c = ctx.inputs.complex("complex", complex)?;
            let v = c.validate();
            ctx.report.verdict("verdict", if v.is_valid() { "valid" } else { "invalid" });
            ctx.report.verdict("validation", &v);
            ctx.report.verdict("ranks", c.ranks());
            ctx.report.verdict("bottom_degree", c.bottom_degree());
            ctx.report.verdict("group", c.group().name());
        }
        Command::Homology { complex, degree } => {
            let c = valid_complex(ctx, complex)?;
            let degrees: Vec<i64> = match degree {
                Some(d) => vec![*d],
                None => (c.bottom_degree()..=c.top_degree()).collect(),
            };
            let list: Vec<Value> = degrees
                .iter()
                .map(|&d| {
                    let h = c.homology(d);
                    json!({"degree": d, "abelian": h.abelian.to_string(), "invariants": h.abelian, "module": h.module})
                })
                .collect();
            ctx.report.verdict("homology", list);
        }
        Command::Cohomology {
            complex,
            degree,
            coefficients,
            module,
        } => {
            let c = valid_complex(ctx, complex)?;
            let g = c.group();
            let (label, r) = match (module, coefficients) {
                (Some(p), _) => {
                    let (mg, m) = ctx.inputs.matrix("module", p)?;
                    if mg.as_ref() != g {
                        bail!("module is over {} but the complex is over {}", mg.name(), g.name());
                    }
                    (format!("presented by {}", p.display()), FPModule::from_presentation(&m, g))
                }
                (None, coeff) => {
                    let coeff = coeff.unwrap_or(Coefficients::Regular);
                    let l = match coeff {
                        Coefficients::Regular => LatticeModule::regular(g),
                        Coefficients::Trivial => LatticeModule::trivial(g),
                        Coefficients::Augmentation => LatticeModule::augmentation_ideal(g),
                    };
                    (format!("{coeff:?}").to_lowercase(), FPModule::from_lattice(l))
                }
            };
            let h = cohomology_local(&c, &r, *degree)?;
            ctx.report.verdict("coefficients", label);
            ctx.report.verdict("degree", degree);
            ctx.report.verdict("cohomology", h.to_string());
            ctx.report.verdict("invariants", &h);
            ctx.report.verdict("vanishes", h.is_zero());
        }
        Command::Silence { complex, degree, to } => {
            let c = valid_complex(ctx, complex)?;
            let to = to.unwrap_or(*degree);
            if to < *degree {
                bail!("--to {to} is below --degree {degree}");
            }
            let certs = silent_in_range(&c, *degree, to)?;
            let all = certs.iter().all(|x| x.is_silent());
            ctx.report.verdict("verdict", if all { "silent" } else { "not-silent" });
            ctx.report.verdict("degrees", certs.iter().map(silence_summary).collect::<Vec<_>>());
            for cert in &certs {
                ctx.silence(&c, cert);
            }
        }
        Command::Obstruction { complex, degree, output } => {
            let c = valid_complex(ctx, complex)?;
            let cert = silent_in_degree(&c, *degree)?;
            if !cert.is_silent() {
                ctx.not_silent(&cert, &[&c]);
                return Ok(());
            }
            let w = obstruction(&c, *degree)?;
            let t = class_is_trivial(&w.class, &ctx.registry, &lim);
            ctx.report.verdict("verdict", "silent");
            ctx.report.verdict("class", &w.class);
            ctx.report.verdict("flat_trace", w.idempotent().flat_trace(c.group()).to_string());
            ctx.report.verdict("trivial", t.verdict);
            ctx.silence(&c, &w.silence);
            if t.verdict == Triviality::Yes {
                ctx.report.certificates.push(Certificate::triviality(&w.class, &t));
            }
            if let Some(p) = output {
                ctx.write("class", p, &write_class(&w.class))?;
            }
        }
        Command::Realize {
            base,
            idempotent,
            k,
            l,
            stage,
            output,
        } => {
            let y = valid_complex(ctx, base)?;
            let (g, e) = ctx.inputs.matrix("idempotent", idempotent)?;
            if g.as_ref() != y.group() {
                bail!("idempotent is over {} but the base complex is over {}", g.name(), y.group().name());
            }
            let input = RealizationInput::new(y, e, *k, *l)?;
            let out = match stage {
                Some(j) => realize_stage(&input, *j)?,
                None => realize_finite(&input)?,
            };
            ctx.report.verdict("ranks", out.ranks());
            ctx.report.verdict("bottom_degree", out.bottom_degree());
            ctx.report.verdict("valid", out.validate().is_valid());
            if stage.is_none() {
                let certs = silent_in_range(&out, *k, *l)?;
                let all = certs.iter().all(|x| x.is_silent());
                ctx.report.verdict("verdict", if all { "silent" } else { "not-silent" });
                for cert in &certs {
                    ctx.silence(&out, cert);
                }
            }
            ctx.write("complex", output, &write_complex(&out))?;
        }
        Command::Dualize {
            complex,
            dimension,
            output,
            check_degree,
        } => {
            let c = valid_complex(ctx, complex)?;
            let d = dualize(&c, *dimension)?;
            ctx.complex_out("dual", output.as_deref(), &d)?;
            if let Some(k) = check_degree {
                match poincare_self_duality_check(&c, *dimension, *k, &ctx.registry, &lim) {
                    Err(cellgap::Error::NotSilent(cert)) => ctx.not_silent(&cert, &[&c, &d]),
                    Err(e) => return Err(e.into()),
                    Ok(rep) => {
                        ctx.report.verdict("identities_hold", rep.identities_hold());
                        ctx.report.verdict("identities", &rep.identities);
                        ctx.report.verdict("obstructions_agree", rep.obstructions_agree.verdict);
                        ctx.report.verdict("self_dual", rep.self_dual);
                        ctx.silence(&c, &rep.silence);
                        ctx.silence(&d, &rep.dual_silence);
                        if rep.obstructions_agree.verdict == Triviality::Yes {
                            let w = obstruction(&c, *k)?;
                            let wd = obstruction(&d, dimension - k)?;
                            let diff = cellgap::kzero::class_difference(&w.class, &wd.class)?;
                            ctx.report.certificates.push(Certificate::triviality(&diff, &rep.obstructions_agree));
                        }
                    }
                }
            }
        }
        Command::Product {
            complex,
            factor: spec,
            k,
            l,
            output,
        } => {
            let x = valid_complex(ctx, complex)?;
            let a = factor(ctx, spec)?;
            let t = tensor_product(&x, &a)?;
            ctx.complex_out("product", output.as_deref(), &t)?;
            match product_formula_check(&x, *k, *l, &a, &ctx.registry, &lim) {
                Err(cellgap::Error::NotSilent(cert)) => ctx.not_silent(&cert, &[&x, &t]),
                Err(e) => return Err(e.into()),
                Ok(rep) => {
                    ctx.report.verdict("verdict", rep.verdict());
                    ctx.report.verdict("euler_multiplies", rep.euler_multiplies());
                    ctx.report.verdict("flat_euler", rep.flat_euler);
                    ctx.report.verdict("euler_factor", rep.euler_a);
                    for cert in &rep.product_silence {
                        ctx.silence(&t, cert);
                    }
                    if rep.triviality.verdict == Triviality::Yes {
                        ctx.report.certificates.push(Certificate::triviality(&rep.difference, &rep.triviality));
                    }
                }
            }
        }
        Command::Cancel { complex, k, l, output } => {
            let c = valid_complex(ctx, complex)?;
            let out = cancel_gap(&c, *k, *l, &lim)?;
            ctx.report.verdict("verdict", if out.success { "cancelled" } else { "stuck" });
            ctx.report.verdict("method", out.method);
            ctx.report.verdict("remaining", &out.remaining);
            ctx.report.verdict("stabilization", &out.stabilization);
            ctx.report.verdict("reason", &out.reason);
            ctx.report.verdict("ranks", out.complex.ranks());
            ctx.complex_out("complex", output.as_deref(), &out.complex)?;
            ctx.report.certificates.push(Certificate::Homotopy {
                source: out.source.clone(),
                target: out.complex.clone(),
                certificate: out.certificate.clone(),
            });
        }
        Command::PairCheck {
            complex,
            subcomplex,
            degree,
        } => {
            let t = valid_complex(ctx, complex)?;
            let sub = ctx.inputs.subcomplex(subcomplex)?;
            match pair_additivity(&t, &sub, *degree, &ctx.registry, &lim) {
                Err(cellgap::Error::NotSilent(cert)) => {
                    let x = sub.sub_complex(&t)?;
                    ctx.not_silent(&cert, &[&t, &x]);
                }
                Err(e) => return Err(e.into()),
                Ok(rep) => {
                    ctx.report.verdict("verdict", rep.verdict());
                    ctx.report.verdict("identities_hold", rep.identities_hold());
                    ctx.report.verdict("identities", &rep.identities);
                    ctx.report.verdict("relative_rank", rep.relative_rank);
                    ctx.report.verdict("projective", rep.fingerprint.projective);
                    ctx.report.verdict("shared_skeleton", rep.shared_skeleton);
                    if let (Some(d), Some(tr)) = (&rep.difference, &rep.triviality) {
                        if tr.verdict == Triviality::Yes {
                            ctx.report.certificates.push(Certificate::triviality(d, tr));
                        }
                    }
                }
            }
        }
        Command::RelDuality {
            complex,
            dimension,
            degree,
        } => {
            let w = valid_complex(ctx, complex)?;
            let rep = relative_duality_check(&w, *dimension, *degree, &ctx.registry, &lim)?;
            ctx.report.verdict("verdict", rep.verdict());
            ctx.report.verdict("consistent", rep.consistent());
            ctx.report.verdict("ranks_agree", rep.ranks_agree);
            ctx.report.verdict("fingerprints_agree", rep.fingerprints_agree);
            ctx.report.verdict("ranks", [rep.bottom_rank, rep.top_rank]);
            ctx.report.verdict("cascade", &rep.cascade);
            if let (Some(d), Some(tr)) = (&rep.difference, &rep.triviality) {
                if tr.verdict == Triviality::Yes {
                    ctx.report.certificates.push(Certificate::triviality(d, tr));
                }
            }
        }
        Command::Tate {
            group_data,
            parity: p,
            group,
        } => {
            let reg = ctx.inputs.registry(group_data)?;
            let entry = match group {
                Some(name) => reg
                    .entries
                    .iter()
                    .find(|e| &e.group == name)
                    .ok_or_else(|| anyhow!("no entry for group {name:?}"))?,
                None => reg.entries.first().ok_or_else(|| anyhow!("registry file has no entries"))?,
            };
            let a = entry.involuted_group()?;
            let t = tate_z2(&a, parity(*p));
            ctx.report.verdict("group", &entry.group);
            ctx.report.verdict("parity", t.parity);
            ctx.report.verdict("tate", t.group.to_string());
            ctx.report.verdict("invariants", &t.group);
            ctx.report.verdict("annihilated_by_two", t.annihilated_by_two);
        }
        Command::SelfDual { class, dimension } => {
            let r = ctx.inputs.class("class", class)?;
            let rep = check_self_dual(&r, *dimension, &ctx.registry, &lim);
            ctx.report.verdict("verdict", rep.verdict);
            ctx.report.verdict("trivial", rep.triviality.verdict);
            if rep.triviality.verdict == Triviality::Yes {
                ctx.report.certificates.push(Certificate::triviality(&rep.difference, &rep.triviality));
            }
        }
        Command::VerifyCertificate { input } => {
            let text = ctx.inputs.text("report", input)?;
            let report = read_report(&text).with_context(|| format!("in {}", input.display()))?;
            let mut results = Vec::new();
            let mut all = true;
            for (i, cert) in report.certificates.iter().enumerate() {
                let r = cert.verify(&ctx.registry);
                all &= r.is_ok();
                results.push(json!({"index": i, "certificate": cert.label(), "valid": r.is_ok(), "error": r.err()}));
            }
            ctx.report.verdict("verdict", if all { "valid" } else { "invalid" });
            ctx.report.verdict("checked", results.len());
            ctx.report.verdict("results", results);
            if !all {
                ctx.status = 1;
            }
        }
    }
    Ok(())
}

/// Reads a complex and rejects it when `∂∂ ≠ 0` or shapes disagree.
fn valid_complex(ctx: &Ctx, path: &Path) -> Result<FreeChainComplex> {
    let c = ctx.inputs.complex("complex", path)?;
    let v = c.validate();
    if !v.is_valid() {
        bail!("{} is not a chain complex: {}", path.display(), serde_json::to_string(&v)?);
    }
    Ok(c)
}
