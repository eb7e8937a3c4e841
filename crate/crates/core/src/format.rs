//! JSON file formats for groups, complexes, matrices, classes, subcomplexes
//! and registry data.
//!
//! A matrix is a list of rows; each entry is a list of `[coeff, element]`
//! terms, where `element` is an index into the group's element list or an
//! element name. Groups are referenced inline or by a name such as `"C3"`,
//! `"S3"`, `"C2^3"` or `"trivial"`; callers can supply their own resolver for
//! other names (the command-line tool resolves file paths).

use std::sync::Arc;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{FreeChainComplex, Subcomplex};
use crate::error::{malformed, Error, Result};
use crate::group::{GroupData, MAX_ORDER};
use crate::integer::json;
use crate::kzero::registry::{Registry, RegistryEntry};
use crate::kzero::KZeroRep;
use crate::ring::{GroupRingElement, GroupRingMatrix};

/// Largest rank of a chain module accepted from input.
pub const MAX_RANK: usize = 4096;

/// Either explicit multiplication-table rows or permutation generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableSpec {
    Rows(Vec<Vec<usize>>),
    Generators(Vec<Vec<usize>>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorsJson {
    perm_generators: Vec<Vec<usize>>,
}

impl Serialize for TableSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TableSpec::Rows(r) => r.serialize(s),
            TableSpec::Generators(g) => GeneratorsJson {
                perm_generators: g.clone(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for TableSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Array(_) => serde_json::from_value(v).map(TableSpec::Rows).map_err(D::Error::custom),
            serde_json::Value::Object(_) => serde_json::from_value::<GeneratorsJson>(v)
                .map(|g| TableSpec::Generators(g.perm_generators))
                .map_err(D::Error::custom),
            _ => Err(D::Error::custom("table must be a list of rows or {\"perm_generators\": [...]}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    pub table: TableSpec,
    /// One value per element, or (with generators) one per generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<i8>>,
}

impl GroupFile {
    pub fn from_group(g: &GroupData) -> Self {
        GroupFile {
            name: g.name().to_string(),
            elements: g.elements().to_vec(),
            table: TableSpec::Rows(g.table_rows()),
            omega: Some(g.omega_values().to_vec()),
        }
    }

    pub fn to_group(&self) -> Result<GroupData> {
        match &self.table {
            TableSpec::Rows(rows) => {
                let n = rows.len();
                let elements = if self.elements.is_empty() {
                    default_names(n)
                } else {
                    self.elements.clone()
                };
                let omega = self.omega.clone().unwrap_or_else(|| vec![1; elements.len()]);
                GroupData::from_table(self.name.clone(), elements, rows.clone(), omega)
            }
            TableSpec::Generators(gens) => {
                let g = GroupData::from_permutations(self.name.clone(), gens, self.omega.as_deref())?;
                if self.elements.is_empty() {
                    return Ok(g);
                }
                if self.elements.len() != g.order() {
                    return Err(malformed(format!(
                        "{} element names given for a group of order {}",
                        self.elements.len(),
                        g.order()
                    )));
                }
                GroupData::from_table(
                    self.name.clone(),
                    self.elements.clone(),
                    g.table_rows(),
                    g.omega_values().to_vec(),
                )
            }
        }
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| if i == 0 { "e".into() } else { format!("g{i}") }).collect()
}

/// Built-in groups by structural name: `trivial`, `C{n}`, `S3`, `C2^{k}`.
pub fn builtin_group(name: &str) -> Option<GroupData> {
    if name == "trivial" || name == "C1" {
        return Some(GroupData::trivial());
    }
    if name == "S3" {
        return Some(GroupData::symmetric3());
    }
    if let Some(k) = name.strip_prefix("C2^") {
        let k: u32 = k.parse().ok()?;
        return (k <= MAX_ORDER.trailing_zeros()).then(|| GroupData::elementary_abelian_2(k));
    }
    let n: usize = name.strip_prefix('C')?.parse().ok()?;
    (1..=MAX_ORDER).contains(&n).then(|| GroupData::cyclic(n))
}

pub fn resolve_builtin(name: &str) -> Result<GroupData> {
    builtin_group(name).ok_or_else(|| malformed(format!("unknown group name {name:?}")))
}

/// `"group"` field: a name for the resolver or an inline group object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupFile),
}

impl GroupRef {
    pub fn resolve(&self, resolver: &dyn Fn(&str) -> Result<GroupData>) -> Result<Arc<GroupData>> {
        match self {
            GroupRef::Name(n) => resolver(n).map(Arc::new),
            GroupRef::Inline(f) => f.to_group().map(Arc::new),
        }
    }
}

/// The element of a term: an index or an element name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
}

/// `[coeff, element]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(#[serde(with = "json::int")] pub BigInt, pub ElementRef);

pub type MatrixRows = Vec<Vec<Vec<Term>>>;

fn element_index(g: &GroupData, e: &ElementRef, at: &dyn Fn() -> String) -> Result<usize> {
    match e {
        ElementRef::Index(i) if *i < g.order() => Ok(*i),
        ElementRef::Index(i) => Err(malformed(format!(
            "{}: element index {i} out of range for group {} of order {}",
            at(),
            g.name(),
            g.order()
        ))),
        ElementRef::Name(n) => g
            .elements()
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| malformed(format!("{}: group {} has no element named {n:?}", at(), g.name()))),
    }
}

/// Builds a `rows × cols` matrix; `what` names the matrix in error messages.
pub fn matrix_from_rows(
    g: &GroupData,
    m: &MatrixRows,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<GroupRingMatrix> {
    if m.len() != rows {
        return Err(Error::Dimension(format!("{what}: expected {rows} rows, found {}", m.len())));
    }
    let mut entries = Vec::new();
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Dimension(format!(
                "{what}: row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, terms) in row.iter().enumerate() {
            let mut pairs = Vec::with_capacity(terms.len());
            for t in terms {
                let idx = element_index(g, &t.1, &|| format!("{what}[{i}][{j}]"))?;
                pairs.push((t.0.clone(), idx));
            }
            entries.push(GroupRingElement::from_pairs(pairs));
        }
    }
    Ok(GroupRingMatrix::from_entries(rows, cols, entries))
}

pub fn matrix_to_rows(m: &GroupRingMatrix) -> MatrixRows {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    m.get(i, j)
                        .terms()
                        .map(|(g, c)| Term(c.clone(), ElementRef::Index(g)))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Row count from the data; columns from the first row, or `cols` when there are no rows.
fn square_or_given(m: &MatrixRows, cols: Option<usize>) -> (usize, usize) {
    let r = m.len();
    let c = cols.or_else(|| m.first().map(Vec::len)).unwrap_or(r);
    (r, c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub group: GroupRef,
    #[serde(default)]
    pub bottom_degree: i64,
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub boundaries: Vec<MatrixRows>,
}

impl ComplexFile {
    pub fn from_complex(c: &FreeChainComplex) -> Self {
        ComplexFile {
            group: GroupRef::Inline(GroupFile::from_group(c.group())),
            bottom_degree: c.bottom_degree(),
            ranks: c.ranks().to_vec(),
            boundaries: c.boundary_list().iter().map(matrix_to_rows).collect(),
        }
    }

    pub fn to_complex(&self, resolver: &dyn Fn(&str) -> Result<GroupData>) -> Result<FreeChainComplex> {
        if let Some(r) = self.ranks.iter().find(|&&r| r > MAX_RANK) {
            return Err(malformed(format!("rank {r} exceeds the limit {MAX_RANK}")));
        }
        let g = self.group.resolve(resolver)?;
        if self.boundaries.len() != self.ranks.len().saturating_sub(1) {
            return Err(malformed(format!(
                "{} ranks need {} boundary matrices, found {}",
                self.ranks.len(),
                self.ranks.len().saturating_sub(1),
                self.boundaries.len()
            )));
        }
        let bs = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let d = self.bottom_degree + i as i64 + 1;
                matrix_from_rows(&g, m, self.ranks[i], self.ranks[i + 1], &format!("boundary of degree {d}"))
            })
            .collect::<Result<Vec<_>>>()?;
        FreeChainComplex::new(g, self.bottom_degree, self.ranks.clone(), bs)
    }
}

/// A single matrix over a group ring, e.g. an idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub group: GroupRef,
    /// Needed only when there are no rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub matrix: MatrixRows,
}

impl MatrixFile {
    pub fn new(g: &GroupData, m: &GroupRingMatrix) -> Self {
        MatrixFile {
            group: GroupRef::Inline(GroupFile::from_group(g)),
            cols: (m.rows() == 0).then_some(m.cols()),
            matrix: matrix_to_rows(m),
        }
    }

    pub fn to_matrix(
        &self,
        resolver: &dyn Fn(&str) -> Result<GroupData>,
    ) -> Result<(Arc<GroupData>, GroupRingMatrix)> {
        let g = self.group.resolve(resolver)?;
        let (r, c) = square_or_given(&self.matrix, self.cols);
        let m = matrix_from_rows(&g, &self.matrix, r, c, "matrix")?;
        Ok((g, m))
    }
}

/// `sign·(Σ[im P] − Σ[im N])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFile {
    pub group: GroupRef,
    #[serde(default = "plus_one")]
    pub sign: i8,
    #[serde(default)]
    pub positive: Vec<MatrixRows>,
    #[serde(default)]
    pub negative: Vec<MatrixRows>,
}

fn plus_one() -> i8 {
    1
}

impl ClassFile {
    pub fn from_class(r: &KZeroRep) -> Self {
        ClassFile {
            group: GroupRef::Inline(GroupFile::from_group(r.group())),
            sign: r.sign(),
            positive: r.positive().iter().map(matrix_to_rows).collect(),
            negative: r.negative().iter().map(matrix_to_rows).collect(),
        }
    }

    pub fn to_class(&self, resolver: &dyn Fn(&str) -> Result<GroupData>) -> Result<KZeroRep> {
        let g = self.group.resolve(resolver)?;
        let read = |list: &[MatrixRows], what: &str| -> Result<Vec<GroupRingMatrix>> {
            list.iter()
                .enumerate()
                .map(|(i, m)| matrix_from_rows(&g, m, m.len(), m.len(), &format!("{what}[{i}]")))
                .collect()
        };
        let p = read(&self.positive, "positive")?;
        let n = read(&self.negative, "negative")?;
        KZeroRep::new(g.clone(), self.sign, p, n)
    }
}

impl Serialize for FreeChainComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexFile::from_complex(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeChainComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ComplexFile::deserialize(d)?.to_complex(&resolve_builtin).map_err(D::Error::custom)
    }
}

impl Serialize for KZeroRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassFile::from_class(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for KZeroRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ClassFile::deserialize(d)?.to_class(&resolve_builtin).map_err(D::Error::custom)
    }
}

pub fn read_group(text: &str) -> Result<GroupData> {
    serde_json::from_str::<GroupFile>(text)?.to_group()
}

pub fn read_complex(text: &str, resolver: &dyn Fn(&str) -> Result<GroupData>) -> Result<FreeChainComplex> {
    serde_json::from_str::<ComplexFile>(text)?.to_complex(resolver)
}

pub fn read_matrix(
    text: &str,
    resolver: &dyn Fn(&str) -> Result<GroupData>,
) -> Result<(Arc<GroupData>, GroupRingMatrix)> {
    serde_json::from_str::<MatrixFile>(text)?.to_matrix(resolver)
}

pub fn read_class(text: &str, resolver: &dyn Fn(&str) -> Result<GroupData>) -> Result<KZeroRep> {
    serde_json::from_str::<ClassFile>(text)?.to_class(resolver)
}

pub fn read_subcomplex(text: &str) -> Result<Subcomplex> {
    Ok(serde_json::from_str(text)?)
}

/// A list of entries, a single entry, or `{"entries": [...]}`.
pub fn read_registry(text: &str) -> Result<Registry> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Shape {
        List(Vec<RegistryEntry>),
        One(RegistryEntry),
        Wrapped(Registry),
    }
    // parse once for syntax errors with positions, then by shape
    let v: serde_json::Value = serde_json::from_str(text)?;
    let shape: Shape = serde_json::from_value(v)
        .map_err(|_| malformed("expected a registry entry, a list of entries, or {\"entries\": [...]}"))?;
    let entries = match shape {
        Shape::List(l) => l,
        Shape::One(e) => vec![e],
        Shape::Wrapped(r) => r.entries,
    };
    for e in &entries {
        e.involuted_group()?;
    }
    Ok(Registry { entries })
}

pub fn write_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_group(g: &GroupData) -> String {
    write_json(&GroupFile::from_group(g))
}

pub fn write_complex(c: &FreeChainComplex) -> String {
    write_json(&ComplexFile::from_complex(c))
}

pub fn write_matrix(g: &GroupData, m: &GroupRingMatrix) -> String {
    write_json(&MatrixFile::new(g, m))
}

pub fn write_class(r: &KZeroRep) -> String {
    write_json(&ClassFile::from_class(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    const RP2: &str = r#"{
        "group": {"name": "C2", "elements": ["e", "t"], "table": [[0, 1], [1, 0]]},
        "bottom_degree": 0,
        "ranks": [1, 1, 1],
        "boundaries": [
            [[[[-1, 0], [1, 1]]]],
            [[[[1, "e"], [1, "t"]]]]
        ]
    }"#;

    #[test]
    fn reads_rp2() {
        let c = read_complex(RP2, &resolve_builtin).unwrap();
        assert!(c.validate().is_valid());
        // the universal cover is S²
        assert_eq!(c.homology(2).abelian.free_rank, 1);
        assert!(c.homology(1).abelian.is_zero());
        let again = read_complex(&write_complex(&c), &resolve_builtin).unwrap();
        assert_eq!(again, c);
        assert_eq!(write_complex(&again), write_complex(&c));
    }

    #[test]
    fn permutation_groups_and_names() {
        let g = read_group(r#"{"name": "S3", "table": {"perm_generators": [[1, 2, 0], [1, 0, 2]]}, "omega": [1, -1]}"#)
            .unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.recognized_name().as_deref(), Some("S3"));
        assert_eq!(g.omega_values().iter().filter(|&&w| w == -1).count(), 3);
        assert_eq!(read_group(&write_group(&g)).unwrap(), g);
        for name in ["trivial", "C5", "S3", "C2^3"] {
            assert!(builtin_group(name).is_some(), "{name}");
        }
        assert!(builtin_group("C0").is_none());
        assert!(builtin_group("Q8").is_none());
    }

    #[test]
    fn errors_carry_positions_and_context() {
        let err = read_complex("{\"group\": \"C2\",\n \"ranks\": [1, 1], \"boundaries\": [[[[[1, 0]]]],]}", &resolve_builtin)
            .unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = read_complex(r#"{"group": "C2", "ranks": [1, 1], "boundaries": [[[[[1, 5]]]]]}"#, &resolve_builtin)
            .unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
        let err = read_complex(r#"{"group": "C2", "ranks": [2, 1], "boundaries": [[[[[1, 0]]]]]}"#, &resolve_builtin)
            .unwrap_err();
        assert!(err.to_string().contains("expected 2 rows"), "{err}");
        assert!(read_group(r#"{"name": "x", "table": [[0, 1], [0, 1]]}"#).is_err());
    }

    #[test]
    fn classes_and_matrices_round_trip() {
        let g = Arc::new(GroupData::cyclic(2));
        let e = GroupRingMatrix::diagonal(&[GroupRingElement::one(), GroupRingElement::zero()]);
        let (g2, e2) = read_matrix(&write_matrix(&g, &e), &resolve_builtin).unwrap();
        assert_eq!((g2.as_ref(), &e2), (g.as_ref(), &e));
        let r = KZeroRep::new(g.clone(), -1, vec![e.clone()], vec![GroupRingMatrix::identity(1)]).unwrap();
        let back = read_class(&write_class(&r), &resolve_builtin).unwrap();
        assert_eq!(back.sign(), -1);
        assert_eq!(back.positive(), r.positive());
        assert_eq!(back.negative(), r.negative());
        let bad = r#"{"group": "C2", "positive": [[[[[2, 0]]]]]}"#;
        assert!(read_class(bad, &resolve_builtin).is_err());
    }

    #[test]
    fn registry_shapes() {
        let one = r#"{"group": "C2^3", "k0_tilde": {"generators": 1, "relations": [[2]]},
                      "involution": [[1]], "source": "literature"}"#;
        let r = read_registry(one).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert!(!r.entries[0].is_zero());
        assert_eq!(read_registry(&format!("[{one}]")).unwrap(), r);
        assert_eq!(read_registry(&format!("{{\"entries\": [{one}]}}")).unwrap(), r);
        assert!(read_registry("[1]").is_err());
    }
}
