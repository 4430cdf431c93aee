//! Finite ordinals `[n] = {0,…,n}` and order-preserving maps between them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Values = SmallVec<[usize; 8]>;

/// An order-preserving map `[src] → [dst]`, stored by its values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdMap {
    dst: usize,
    values: Values,
}

impl OrdMap {
    /// Builds a map into `[dst]`, checking monotonicity and bounds.
    pub fn new(dst: usize, values: &[usize]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if values.iter().any(|&v| v > dst) {
            return Err(Error::Invalid("ordmap value exceeds codomain".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("ordmap values must be weakly increasing".into()));
        }
        Ok(Self { dst, values: values.iter().copied().collect() })
    }

    pub(crate) fn from_values_unchecked(dst: usize, values: Values) -> Self {
        debug_assert!(!values.is_empty() && values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v <= dst));
        Self { dst, values }
    }

    pub fn identity(n: usize) -> Self {
        Self { dst: n, values: (0..=n).collect() }
    }

    /// The coface `δ_i : [n-1] → [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::Invalid(alloc::format!("face d{i} into [{n}] does not exist")));
        }
        Ok(Self { dst: n, values: (0..n).map(|x| if x < i { x } else { x + 1 }).collect() })
    }

    /// The codegeneracy `σ_i : [n+1] → [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Invalid(alloc::format!("degeneracy s{i} onto [{n}] does not exist")));
        }
        Ok(Self { dst: n, values: (0..=n + 1).map(|x| if x <= i { x } else { x - 1 }).collect() })
    }

    /// The map `[0] → [n]` picking out `i`.
    pub fn point(n: usize, i: usize) -> Self {
        assert!(i <= n);
        Self { dst: n, values: smallvec::smallvec![i] }
    }

    /// The unique order-preserving map whose `i`-th fiber has `sizes[i]` elements.
    pub fn from_fibers(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.iter().all(|&s| s == 0) {
            return Err(Error::EmptyDomain);
        }
        let mut values = Values::new();
        for (i, &s) in sizes.iter().enumerate() {
            values.extend(core::iter::repeat(i).take(s));
        }
        Ok(Self { dst: sizes.len() - 1, values })
    }

    pub fn src(&self) -> usize {
        self.values.len() - 1
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = alloc::vec![0; self.dst + 1];
        for &v in &self.values {
            sizes[v] += 1;
        }
        sizes
    }

    pub fn is_identity(&self) -> bool {
        self.dst == self.src() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.values.len() - 1] == self.dst
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &OrdMap) -> Result<OrdMap> {
        if g.dst != self.src() {
            return Err(Error::Mismatch(alloc::format!(
                "cannot compose [{}]→[{}] after [{}]→[{}]",
                self.src(),
                self.dst,
                g.src(),
                g.dst
            )));
        }
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &OrdMap) -> OrdMap {
        OrdMap { dst: self.dst, values: g.values.iter().map(|&v| self.values[v]).collect() }
    }

    /// Epi-mono normal form. With `faces = [i_1 < … < i_r]` and
    /// `degeneracies = [j_1 < … < j_s]` the map equals
    /// `δ_{i_r} ∘ … ∘ δ_{i_1} ∘ σ_{j_1} ∘ … ∘ σ_{j_s}`.
    pub fn factorize(&self) -> Factorization {
        let mut hit = alloc::vec![false; self.dst + 1];
        for &v in &self.values {
            hit[v] = true;
        }
        let faces = (0..=self.dst).filter(|&i| !hit[i]).collect();
        let degeneracies =
            (0..self.src()).filter(|&j| self.values[j] == self.values[j + 1]).collect();
        Factorization { src: self.src(), dst: self.dst, faces, degeneracies }
    }

    /// Generators in application order (first applied first), each as an
    /// `OrdMap`. Their composite is `self`.
    pub fn generator_chain(&self) -> Vec<Generator> {
        let f = self.factorize();
        let mut chain = Vec::new();
        // σ_{j_s} is applied first; each σ_j lowers the level by one.
        let mut level = f.src;
        for &j in f.degeneracies.iter().rev() {
            level -= 1;
            chain.push(Generator::Degeneracy { target: level, index: j });
        }
        for &i in &f.faces {
            level += 1;
            chain.push(Generator::Face { target: level, index: i });
        }
        chain
    }
}

/// Output of [`OrdMap::factorize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub src: usize,
    pub dst: usize,
    pub faces: Vec<usize>,
    pub degeneracies: Vec<usize>,
}

impl Factorization {
    pub fn recompose(&self) -> Result<OrdMap> {
        let mut level = self.src;
        let mut acc = OrdMap::identity(level);
        for &j in self.degeneracies.iter().rev() {
            if level == 0 {
                return Err(Error::Invalid("too many degeneracies".into()));
            }
            level -= 1;
            acc = OrdMap::degeneracy(level, j)?.compose(&acc)?;
        }
        for &i in &self.faces {
            level += 1;
            acc = OrdMap::face(level, i)?.compose(&acc)?;
        }
        if acc.dst != self.dst {
            return Err(Error::Mismatch("factorization does not reach the codomain".into()));
        }
        Ok(acc)
    }
}

/// A face or degeneracy generator, tagged with its codomain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `δ_index : [target-1] → [target]`
    Face { target: usize, index: usize },
    /// `σ_index : [target+1] → [target]`
    Degeneracy { target: usize, index: usize },
}

impl Generator {
    pub fn to_map(self) -> OrdMap {
        match self {
            Generator::Face { target, index } => OrdMap::face(target, index).expect("valid face"),
            Generator::Degeneracy { target, index } => {
                OrdMap::degeneracy(target, index).expect("valid degeneracy")
            }
        }
    }

    pub fn src(self) -> usize {
        match self {
            Generator::Face { target, .. } => target - 1,
            Generator::Degeneracy { target, .. } => target + 1,
        }
    }

    pub fn dst(self) -> usize {
        match self {
            Generator::Face { target, .. } | Generator::Degeneracy { target, .. } => target,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Face { index, .. } => write!(f, "d{index}"),
            Generator::Degeneracy { index, .. } => write!(f, "s{index}"),
        }
    }
}

/// All order-preserving maps `[m] → [n]`, in lexicographic order of values.
pub fn all_maps(m: usize, n: usize) -> Vec<OrdMap> {
    let mut out = Vec::new();
    let mut values: Values = smallvec::smallvec![0; m + 1];
    loop {
        out.push(OrdMap { dst: n, values: values.clone() });
        // Next weakly increasing sequence bounded by n.
        let mut k = m + 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if values[k] < n {
                let v = values[k] + 1;
                for slot in values[k..].iter_mut() {
                    *slot = v;
                }
                break;
            }
        }
    }
}

impl fmt::Debug for OrdMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Raw form `[v0,v1,…]@dst`.
impl fmt::Display for OrdMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]@{}", self.dst)
    }
}

impl core::str::FromStr for OrdMap {
    type Err = Error;

    /// Parses the raw form `[0,0,2]@2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, dst) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse(alloc::format!("expected `[..]@n`, got `{s}`")))?;
        let body = body.trim();
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(alloc::format!("expected brackets in `{s}`")))?;
        let values = parse_usize_list(inner)?;
        let dst = parse_usize(dst)?;
        OrdMap::new(dst, &values)
    }
}

/// Parses a single generator token such as `d0` or `s2` (without level).
pub fn parse_generator_token(tok: &str) -> Result<(char, usize)> {
    let tok = tok.trim();
    let mut chars = tok.chars();
    match chars.next() {
        Some(c @ ('d' | 's')) => Ok((c, parse_usize(chars.as_str())?)),
        _ => Err(Error::Parse(alloc::format!("`{tok}` is not a face or degeneracy"))),
    }
}

/// Composes a chain of generator tokens written left to right as
/// `g_1 g_2 … g_k` (meaning `g_1 ∘ … ∘ g_k`) starting from `[src]`.
pub fn parse_generator_chain(tokens: &[&str], src: usize) -> Result<OrdMap> {
    let mut acc = OrdMap::identity(src);
    let mut level = src;
    for tok in tokens.iter().rev() {
        let (kind, index) = parse_generator_token(tok)?;
        let g = if kind == 'd' {
            OrdMap::face(level + 1, index)?
        } else {
            if level == 0 {
                return Err(Error::Invalid(alloc::format!("s{index} cannot leave [0]")));
            }
            OrdMap::degeneracy(level - 1, index)?
        };
        level = g.dst();
        acc = g.compose_unchecked(&acc);
    }
    Ok(acc)
}

/// Renders `self` as generator tokens in the order accepted by
/// [`parse_generator_chain`]; the identity renders as an empty string.
pub fn generator_string(f: &OrdMap) -> String {
    let chain = f.generator_chain();
    let mut out = String::new();
    for g in chain.iter().rev() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&alloc::format!("{g}"));
    }
    out
}

pub(crate) fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(alloc::format!("bad integer `{}`", s.trim())))
}

pub(crate) fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_usize).collect()
}
