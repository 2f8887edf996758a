//! JSON file formats. Every document carries a versioned `schema` tag.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const GROUP_SCHEMA: &str = "tamearith.group/1";
pub const COMPLEX_SCHEMA: &str = "tamearith.complex/1";
pub const FIELD_SCHEMA: &str = "tamearith.field/1";
pub const REPORT_SCHEMA: &str = "tamearith.report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// Element `k` is the k-th power of a generator.
    Cyclic { n: usize },
    /// Full multiplication table, `rows[a][b] = ab`.
    Table { rows: Vec<Vec<usize>> },
    /// Closure of permutations acting on `0..m`.
    Permutations { generators: Vec<Vec<usize>> },
    /// Element `(a, b)` has index `a * |H| + b`.
    DirectProduct { factors: Vec<GroupSpec> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub schema: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub group: GroupSpec,
}

/// Matrix over `Q[G]` in row-major order; each entry lists the `|G|`
/// coefficients as rational strings such as `"-3/2"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricSpec {
    /// The standard form in every degree.
    Standard,
    /// Unit norm on every determinant line.
    Unit,
    /// Forms `h(x, y) = mu(x F, y F)`, one right factor `F` per degree.
    RightFactors { factors: Vec<MatrixSpec> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub schema: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub group: GroupSpec,
    pub start: i64,
    pub ranks: Vec<usize>,
    /// `boundaries[i]` maps degree `start + i` to `start + i + 1`.
    pub boundaries: Vec<MatrixSpec>,
    pub metric: MetricSpec,
    /// Per-irreducible factors `alpha(phi)`; the report then includes the
    /// class of the rescaled metrics.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescale: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_bases: Option<Vec<MatrixSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_bases: Option<BTreeMap<u64, Vec<MatrixSpec>>>,
}

/// A complex number known to lie within `rad` of `re + i im` in each
/// coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalSpec {
    pub re: f64,
    pub im: f64,
    pub rad: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InertiaCharSpec {
    pub generator: usize,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamificationSpec {
    pub p: u64,
    pub f: u32,
    pub g: u32,
    pub inertia: Vec<usize>,
    pub character: InertiaCharSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub schema: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub group: GroupSpec,
    /// `sigma_0(g(b))` for every element `g`.
    pub embeddings: Vec<IntervalSpec>,
    pub conj_element: usize,
    pub ramification: Vec<RamificationSpec>,
    /// Coordinates of a generator of `O_N` over `Z[G]` in the basis `g(b)`.
    #[serde(default)]
    pub integral_generator: Option<Vec<String>>,
}
