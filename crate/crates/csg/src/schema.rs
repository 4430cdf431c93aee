//! JSON formats for groups with parity, twisted algebras and Env morphisms.
//!
//! Groups:
//!
//! ```json
//! {"family":"cyclic","order":4,"parity":[1,-1,1,-1]}
//! {"family":"table","elements":["e","a"],"table":[[0,1],[1,0]],"parity":[1,-1]}
//! {"family":"trivial"}
//! ```
//!
//! Table entries are element indices or names; `table[a][b]` is `a·b`.
//!
//! Algebras list scalars as integers or `"p/q"` strings. `mult[i][j]` holds
//! the coordinates of `e_i·e_j`, and an action matrix is row-major with
//! column `c` the image of `e_c`:
//!
//! ```json
//! {"field":"Q","dim":2,"basis":["1","g"],"unit":[1,0],
//!  "mult":[[[1,0],[0,1]],[[0,1],[1,0]]],
//!  "group":{"family":"cyclic","order":2,"parity":[1,-1]},
//!  "actions":[{"gen":1,"parity":-1,"matrix":[[1,0],[0,1]]}]}
//! ```
//!
//! Env morphisms give each fiber's elements in their linear order
//! (1-based) and the labels in the natural order of those elements. Labels
//! like `g11+` declare a symbolic generator and its parity; with a `group`
//! key they are element names of that group instead.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use csg_core::field::{Field, PrimeField, Rationals};
use csg_core::gpar::{Family as GroupFamily, FreeParityGroup, GroupOps, ParityGroup, Word};
use csg_core::twalg::{Dense, TwistedAlgebra};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Cyclic { order: usize, parity: Vec<i8> },
    Table { elements: Vec<String>, table: Vec<Vec<Entry>>, parity: Vec<i8> },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Entry {
    Index(usize),
    Name(String),
}

impl GroupSpec {
    pub fn build(&self) -> Result<ParityGroup> {
        Ok(match self {
            GroupSpec::Trivial => ParityGroup::trivial(),
            GroupSpec::Cyclic { order, parity } => ParityGroup::cyclic(*order, parity)?,
            GroupSpec::Table { elements, table, parity } => {
                let idx = |e: &Entry| -> Result<usize> {
                    match e {
                        Entry::Index(i) => Ok(*i),
                        Entry::Name(n) => elements.iter().position(|x| x == n).ok_or_else(|| anyhow!("unknown element `{n}`")),
                    }
                };
                let rows = table.iter().map(|r| r.iter().map(idx).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
                ParityGroup::from_table(elements.clone(), rows, parity)?
            }
        })
    }
}

pub fn group_to_json(g: &ParityGroup) -> Value {
    match g.family() {
        GroupFamily::Trivial => json!({"family": "trivial"}),
        GroupFamily::Cyclic(k) => json!({"family": "cyclic", "order": k, "parity": g.parities()}),
        GroupFamily::Table => json!({
            "family": "table",
            "elements": g.names(),
            "table": g.table_rows(),
            "parity": g.parities(),
        }),
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

pub fn read_group(path: &Path) -> Result<ParityGroup> {
    let spec: GroupSpec = serde_json::from_value(read_json(path)?).with_context(|| format!("{}: bad group", path.display()))?;
    spec.build().with_context(|| format!("{}: invalid group", path.display()))
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: String,
    pub dim: usize,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    pub unit: Vec<Scalar>,
    pub mult: Vec<Vec<Vec<Scalar>>>,
    pub group: Value,
    #[serde(default)]
    pub actions: Vec<ActionSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub gen: Entry,
    /// Optional cross-check against the group's parity.
    #[serde(default)]
    pub parity: Option<i8>,
    pub matrix: Vec<Vec<Scalar>>,
}

/// A twisted algebra over whichever field its file names.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Q(TwistedAlgebra<Rationals>),
    P(TwistedAlgebra<PrimeField>),
}

/// Runs a generic body against the algebra's concrete field.
#[macro_export]
macro_rules! with_algebra {
    ($a:expr, $alg:ident => $body:expr) => {
        match $a {
            $crate::schema::AnyAlgebra::Q($alg) => $body,
            $crate::schema::AnyAlgebra::P($alg) => $body,
        }
    };
}

impl AlgebraSpec {
    fn build_with<F: Field>(&self, f: F) -> Result<TwistedAlgebra<F>> {
        let d = self.dim;
        let scalar = |s: &Scalar| -> Result<F::Elem> {
            match s {
                Scalar::Int(n) => Ok(f.from_i64(*n)),
                Scalar::Text(t) => Ok(f.parse(t)?),
            }
        };
        let vector = |v: &[Scalar], what: &str| -> Result<Vec<F::Elem>> {
            if v.len() != d {
                bail!("{what} has {} coordinates, dim is {d}", v.len());
            }
            v.iter().map(scalar).collect()
        };
        let basis = match &self.basis {
            Some(b) if b.len() != d => bail!("basis lists {} names, dim is {d}", b.len()),
            Some(b) => b.clone(),
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };
        let unit = vector(&self.unit, "unit")?;
        if self.mult.len() != d {
            bail!("mult must have {d} rows");
        }
        let mult = self
            .mult
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != d {
                    bail!("mult row {i} must have {d} entries");
                }
                row.iter().enumerate().map(|(j, v)| vector(v, &format!("mult[{i}][{j}]"))).collect()
            })
            .collect::<Result<Vec<Vec<Vec<F::Elem>>>>>()?;
        let spec: GroupSpec = serde_json::from_value(self.group.clone()).context("bad group")?;
        let group = spec.build()?;
        let mut gens: Vec<(usize, Dense<F::Elem>)> = Vec::new();
        for a in &self.actions {
            let g = match &a.gen {
                Entry::Index(i) if *i < group.order() => *i,
                Entry::Index(i) => bail!("action generator {i} is outside the group"),
                Entry::Name(n) => group.index_of(n).ok_or_else(|| anyhow!("unknown group element `{n}`"))?,
            };
            if let Some(p) = a.parity {
                if p != group.parity(&g) {
                    bail!("action of {} declares parity {p}, the group says {}", group.name(g), group.parity(&g));
                }
            }
            if a.matrix.len() != d {
                bail!("action of {} must have {d} rows", group.name(g));
            }
            let m = a.matrix.iter().map(|r| vector(r, "matrix row")).collect::<Result<Vec<_>>>()?;
            gens.push((g, m));
        }
        Ok(TwistedAlgebra::new(f, basis, unit, mult, group, gens)?)
    }

    pub fn build(&self) -> Result<AnyAlgebra> {
        let name = self.field.trim();
        if name == "Q" {
            return Ok(AnyAlgebra::Q(self.build_with(Rationals)?));
        }
        let p: u64 = name
            .strip_prefix('F')
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| anyhow!("field must be \"Q\" or \"Fp\" for a prime p, got `{name}`"))?;
        Ok(AnyAlgebra::P(self.build_with(PrimeField::new(p)?)?))
    }
}

pub fn read_algebra(path: &Path) -> Result<AnyAlgebra> {
    let spec: AlgebraSpec =
        serde_json::from_value(read_json(path)?).with_context(|| format!("{}: bad algebra", path.display()))?;
    spec.build().with_context(|| format!("{}: invalid algebra", path.display()))
}

fn scalar_json<F: Field>(f: &F, x: &F::Elem) -> Value {
    let s = f.format(x);
    match s.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(s),
    }
}

pub fn algebra_to_json<F: Field>(a: &TwistedAlgebra<F>) -> Value {
    let f = a.field();
    let d = a.dim();
    let vector = |v: &[F::Elem]| Value::Array(v.iter().map(|x| scalar_json(f, x)).collect());
    let g = a.group();
    json!({
        "field": f.name(),
        "dim": d,
        "basis": a.basis(),
        "unit": vector(a.unit()),
        "mult": (0..d).map(|i| (0..d).map(|j| vector(a.structure(i, j))).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "group": group_to_json(g),
        "actions": a.generators().iter().map(|(s, m)| json!({
            "gen": s,
            "parity": g.parity(s),
            "matrix": m.iter().map(|r| vector(r)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSpec {
    pub order: Vec<usize>,
    pub labels: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvSpec {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub group: Option<Value>,
    #[serde(default)]
    pub fibers: Option<Vec<FiberSpec>>,
    /// Alternative to `fibers`: the text form `(name; (2<1; a+, b-), ())`.
    #[serde(default)]
    pub literal: Option<String>,
}

impl EnvSpec {
    /// The text form, whichever way the file states it.
    pub fn literal(&self) -> Result<String> {
        match (&self.fibers, &self.literal) {
            (Some(_), Some(_)) => bail!("give either `fibers` or `literal`, not both"),
            (None, Some(l)) => Ok(l.clone()),
            (Some(fs), None) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|f| {
                        if f.order.is_empty() {
                            "()".to_string()
                        } else {
                            let ord: Vec<String> = f.order.iter().map(|x| x.to_string()).collect();
                            format!("({}; {})", ord.join("<"), f.labels.join(", "))
                        }
                    })
                    .collect();
                Ok(if self.name.is_empty() {
                    format!("({})", parts.join(", "))
                } else {
                    format!("({}; {})", self.name, parts.join(", "))
                })
            }
            (None, None) => bail!("an Env morphism needs `fibers` or `literal`"),
        }
    }
}

pub fn read_env(path: &Path) -> Result<EnvSpec> {
    serde_json::from_value(read_json(path)?).with_context(|| format!("{}: bad Env morphism", path.display()))
}

/// Labels of Env morphisms: either symbolic generators shared across all
/// inputs of one command, or elements of a fixed table group.
pub enum LabelGroup {
    Free(FreeParityGroup),
    Table(ParityGroup),
}

impl LabelGroup {
    pub fn for_specs(specs: &[&EnvSpec]) -> Result<Self> {
        let groups: Vec<&Value> = specs.iter().filter_map(|s| s.group.as_ref()).collect();
        match groups.first() {
            None => Ok(LabelGroup::Free(FreeParityGroup::new())),
            Some(g) => {
                if groups.len() != specs.len() || groups.iter().any(|h| h != g) {
                    bail!("Env inputs must all name the same group or none");
                }
                let spec: GroupSpec = serde_json::from_value((*g).clone()).context("bad group")?;
                Ok(LabelGroup::Table(spec.build()?))
            }
        }
    }
}

/// Either label type, so commands stay generic over one code path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Word(Word),
    Elem(usize),
}

impl GroupOps for LabelGroup {
    type Elem = Label;
    fn identity(&self) -> Label {
        match self {
            LabelGroup::Free(g) => Label::Word(g.identity()),
            LabelGroup::Table(g) => Label::Elem(g.identity()),
        }
    }
    fn mul(&self, a: &Label, b: &Label) -> Label {
        match (self, a, b) {
            (LabelGroup::Free(g), Label::Word(a), Label::Word(b)) => Label::Word(g.mul(a, b)),
            (LabelGroup::Table(g), Label::Elem(a), Label::Elem(b)) => Label::Elem(g.mul(a, b)),
            _ => unreachable!("labels come from one group"),
        }
    }
    fn inv(&self, a: &Label) -> Label {
        match (self, a) {
            (LabelGroup::Free(g), Label::Word(a)) => Label::Word(g.inv(a)),
            (LabelGroup::Table(g), Label::Elem(a)) => Label::Elem(g.inv(a)),
            _ => unreachable!("labels come from one group"),
        }
    }
    fn is_odd(&self, a: &Label) -> bool {
        match (self, a) {
            (LabelGroup::Free(g), Label::Word(a)) => g.is_odd(a),
            (LabelGroup::Table(g), Label::Elem(a)) => g.is_odd(a),
            _ => unreachable!("labels come from one group"),
        }
    }
}

impl LabelGroup {
    pub fn parse(&mut self, token: &str) -> csg_core::Result<Label> {
        match self {
            LabelGroup::Free(g) => csg_core::envelope::free_label(g)(token).map(Label::Word),
            LabelGroup::Table(g) => csg_core::envelope::table_label(g)(token).map(Label::Elem),
        }
    }

    pub fn render(&self, l: &Label) -> String {
        match (self, l) {
            (LabelGroup::Free(g), Label::Word(w)) => g.render(w),
            (LabelGroup::Table(g), Label::Elem(i)) => g.name(*i).to_string(),
            _ => unreachable!("labels come from one group"),
        }
    }
}
