//! Finite groups with parity, permutations, and wreath products `G ≀ Σ_{n+1}`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// The operations the combinatorial constructions need from a group with
/// parity. Implemented by finite tables, symbolic words, and the opposite
/// group wrapper [`Op`].
pub trait GroupOps {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_odd(&self, a: &Self::Elem) -> bool;

    fn parity(&self, a: &Self::Elem) -> i8 {
        if self.is_odd(a) {
            -1
        } else {
            1
        }
    }
}

impl<G: GroupOps + ?Sized> GroupOps for &G {
    type Elem = G::Elem;
    fn identity(&self) -> Self::Elem {
        (**self).identity()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).mul(a, b)
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (**self).inv(a)
    }
    fn is_odd(&self, a: &Self::Elem) -> bool {
        (**self).is_odd(a)
    }
}

/// The opposite group: same elements and parity, `a·b` computed as `b·a`.
#[derive(Clone, Debug)]
pub struct Op<G>(pub G);

impl<G: GroupOps> GroupOps for Op<G> {
    type Elem = G::Elem;
    fn identity(&self) -> Self::Elem {
        self.0.identity()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.0.mul(b, a)
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        self.0.inv(a)
    }
    fn is_odd(&self, a: &Self::Elem) -> bool {
        self.0.is_odd(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Trivial,
    Cyclic(usize),
    Table,
}

/// A finite group with parity, elements indexed `0..order` with `0` the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGroup {
    family: Family,
    names: Vec<String>,
    table: Vec<usize>,
    inverse: Vec<usize>,
    odd: Vec<bool>,
}

impl ParityGroup {
    pub fn trivial() -> Self {
        Self {
            family: Family::Trivial,
            names: alloc::vec!["e".to_string()],
            table: alloc::vec![0],
            inverse: alloc::vec![0],
            odd: alloc::vec![false],
        }
    }

    /// Cyclic group of order `k`; element `i` is the `i`-th power of the
    /// generator. `parity[i] ∈ {1,-1}`.
    pub fn cyclic(k: usize, parity: &[i8]) -> Result<Self> {
        if k == 0 || parity.len() != k {
            return Err(Error::Invalid("cyclic group needs order ≥ 1 and one parity per element".into()));
        }
        let table = (0..k).flat_map(|a| (0..k).map(move |b| (a + b) % k)).collect();
        let names = (0..k)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "t".to_string(),
                _ => alloc::format!("t^{i}"),
            })
            .collect();
        Self::finish(Family::Cyclic(k), names, table, parity)
    }

    /// `(C₂, id)`: the nontrivial element is odd.
    pub fn c2_odd() -> Self {
        Self::cyclic(2, &[1, -1]).expect("valid")
    }

    /// `(C₄, q)`: the quotient to `C₂`, generator odd.
    pub fn c4_q() -> Self {
        Self::cyclic(4, &[1, -1, 1, -1]).expect("valid")
    }

    /// An explicit multiplication table; `table[a][b]` is the index of `a·b`.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>, parity: &[i8]) -> Result<Self> {
        let k = names.len();
        if k == 0 || table.len() != k || table.iter().any(|r| r.len() != k) {
            return Err(Error::Invalid("multiplication table must be square and match the element list".into()));
        }
        if table.iter().flatten().any(|&x| x >= k) {
            return Err(Error::Invalid("table entry out of range".into()));
        }
        let flat = table.into_iter().flatten().collect();
        Self::finish(Family::Table, names, flat, parity)
    }

    fn finish(family: Family, names: Vec<String>, table: Vec<usize>, parity: &[i8]) -> Result<Self> {
        let k = names.len();
        if parity.len() != k || parity.iter().any(|&p| p != 1 && p != -1) {
            return Err(Error::Invalid("parity must list +1 or -1 for every element".into()));
        }
        let at = |a: usize, b: usize| table[a * k + b];
        // The identity must sit at index 0.
        if (0..k).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(Error::Invalid("element 0 must be the identity".into()));
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::Invalid(alloc::format!("table is not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut inverse = alloc::vec![usize::MAX; k];
        for a in 0..k {
            match (0..k).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(Error::Invalid(alloc::format!("element {a} has no inverse"))),
            }
        }
        let odd: Vec<bool> = parity.iter().map(|&p| p == -1).collect();
        if odd[0] {
            return Err(Error::Invalid("the identity must be even".into()));
        }
        for a in 0..k {
            for b in 0..k {
                if odd[at(a, b)] != (odd[a] ^ odd[b]) {
                    return Err(Error::Invalid(alloc::format!("parity is not a homomorphism at ({a},{b})")));
                }
            }
        }
        Ok(Self { family, names, table, inverse, odd })
    }

    /// Direct product; element `(a, b)` has index `a·|other| + b` and the
    /// parity of `a` times the parity of `b`.
    pub fn product(&self, other: &ParityGroup) -> ParityGroup {
        let (k1, k2) = (self.order(), other.order());
        let k = k1 * k2;
        let mut table = Vec::with_capacity(k * k);
        for x in 0..k {
            for y in 0..k {
                let (a1, b1) = (x / k2, x % k2);
                let (a2, b2) = (y / k2, y % k2);
                table.push(self.mul_idx(a1, a2) * k2 + other.mul_idx(b1, b2));
            }
        }
        let names = (0..k)
            .map(|x| alloc::format!("({},{})", self.names[x / k2], other.names[x % k2]))
            .collect();
        let parity: Vec<i8> = (0..k)
            .map(|x| if self.odd[x / k2] ^ other.odd[x % k2] { -1 } else { 1 })
            .collect();
        Self::finish(Family::Table, names, table, &parity).expect("product of groups is a group")
    }

    /// Same group with every element declared even.
    pub fn with_trivial_parity(&self) -> ParityGroup {
        let mut g = self.clone();
        g.odd.iter_mut().for_each(|o| *o = false);
        g
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn parities(&self) -> Vec<i8> {
        self.odd.iter().map(|&o| if o { -1 } else { 1 }).collect()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    /// Structural equality of the group law and parity, ignoring names.
    pub fn same_structure(&self, other: &ParityGroup) -> bool {
        self.table == other.table && self.odd == other.odd
    }

    /// A generating set chosen greedily by index.
    pub fn generators(&self) -> Vec<usize> {
        let k = self.order();
        let mut gens = Vec::new();
        let mut reached = alloc::vec![false; k];
        reached[0] = true;
        for a in 1..k {
            if reached[a] {
                continue;
            }
            gens.push(a);
            // Close the subgroup generated so far.
            let mut frontier: Vec<usize> = (0..k).filter(|&x| reached[x]).collect();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = self.mul_idx(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order()
    }

    pub fn power(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul_idx(acc, a))
    }
}

impl GroupOps for ParityGroup {
    type Elem = usize;
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul_idx(*a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }
    fn is_odd(&self, a: &usize) -> bool {
        self.odd[*a]
    }
}

/// Words in named generators with declared parities, used to reproduce
/// symbolic computations such as label products `h11g41` exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeParityGroup {
    gens: Vec<(String, bool)>,
}

/// A reduced word: `(generator index, inverted)` letters.
pub type Word = SmallVec<[(u32, bool); 4]>;

impl FreeParityGroup {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers (or looks up) a generator; re-declaring with a different
    /// parity is an error.
    pub fn intern(&mut self, name: &str, odd: bool) -> Result<Word> {
        if let Some(i) = self.gens.iter().position(|(n, _)| n == name) {
            if self.gens[i].1 != odd {
                return Err(Error::Invalid(alloc::format!("generator `{name}` declared with both parities")));
            }
            return Ok(smallvec::smallvec![(i as u32, false)]);
        }
        self.gens.push((name.to_string(), odd));
        Ok(smallvec::smallvec![((self.gens.len() - 1) as u32, false)])
    }

    pub fn generator(&self, name: &str) -> Option<Word> {
        self.gens.iter().position(|(n, _)| n == name).map(|i| smallvec::smallvec![(i as u32, false)])
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        let mut s = String::new();
        for &(g, inv) in w {
            s.push_str(&self.gens[g as usize].0);
            if inv {
                s.push_str("^-1");
            }
        }
        s
    }

    /// Parses a word written as concatenated generator names, longest match
    /// first; `e` is the identity.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "e" {
            return Ok(Word::new());
        }
        let mut rest = s;
        let mut w = Word::new();
        while !rest.is_empty() {
            let best = self
                .gens
                .iter()
                .enumerate()
                .filter(|(_, (n, _))| rest.starts_with(n.as_str()))
                .max_by_key(|(_, (n, _))| n.len())
                .ok_or_else(|| Error::Parse(alloc::format!("unknown generator in `{s}`")))?;
            rest = &rest[best.1 .0.len()..];
            let mut inv = false;
            if let Some(r) = rest.strip_prefix("^-1") {
                rest = r;
                inv = true;
            }
            w = self.mul(&w, &smallvec::smallvec![(best.0 as u32, inv)]);
        }
        Ok(w)
    }
}

impl GroupOps for FreeParityGroup {
    type Elem = Word;
    fn identity(&self) -> Word {
        Word::new()
    }
    fn mul(&self, a: &Word, b: &Word) -> Word {
        let mut out = a.clone();
        for &letter in b {
            match out.last() {
                Some(&(g, inv)) if g == letter.0 && inv != letter.1 => {
                    out.pop();
                }
                _ => out.push(letter),
            }
        }
        out
    }
    fn inv(&self, a: &Word) -> Word {
        a.iter().rev().map(|&(g, inv)| (g, !inv)).collect()
    }
    fn is_odd(&self, a: &Word) -> bool {
        a.iter().fold(false, |acc, &(g, _)| acc ^ self.gens[g as usize].1)
    }
}

pub(crate) type Images = SmallVec<[usize; 8]>;

/// A permutation of `{0,…,n}` stored by images; `(pq)(i) = p(q(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Images,
}

impl Perm {
    pub fn new(images: &[usize]) -> Result<Self> {
        let k = images.len();
        if k == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut seen = alloc::vec![false; k];
        for &i in images {
            if i >= k || seen[i] {
                return Err(Error::Invalid("permutation images must be a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Self { images: images.iter().copied().collect() })
    }

    pub(crate) fn from_images_unchecked(images: Images) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..=n).collect() }
    }

    /// `i ↦ i + 1 mod n+1`.
    pub fn cycle(n: usize) -> Self {
        Self { images: (0..=n).map(|i| (i + 1) % (n + 1)).collect() }
    }

    /// `i ↦ n - i`.
    pub fn reversal(n: usize) -> Self {
        Self { images: (0..=n).rev().collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Images = (0..=n).collect();
        images.swap(a, b);
        Self { images }
    }

    pub fn level(&self) -> usize {
        self.images.len() - 1
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ q`.
    pub fn compose(&self, q: &Perm) -> Perm {
        debug_assert_eq!(self.images.len(), q.images.len());
        Perm { images: q.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images: Images = smallvec::smallvec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    pub fn sign(&self) -> i8 {
        let k = self.images.len();
        let mut seen = alloc::vec![false; k];
        let mut s = 1;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// Block sum acting on `{0,…,n+m+1}`: `self` on the first block, `other`
    /// shifted onto the second.
    pub fn block_sum(&self, other: &Perm) -> Perm {
        let k = self.images.len();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&v| v + k));
        Perm { images }
    }

    /// All permutations of `{0,…,n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..=n).collect();
        loop {
            out.push(Perm { images: cur.iter().copied().collect() });
            // next lexicographic permutation
            let k = cur.len();
            let Some(i) = (0..k - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).expect("exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images.as_slice())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// An element `(g_0,…,g_n; γ)` of `G ≀ Σ_{n+1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WreathElem<E> {
    pub labels: Vec<E>,
    pub perm: Perm,
}

impl<E: Clone> WreathElem<E> {
    pub fn new(labels: Vec<E>, perm: Perm) -> Result<Self> {
        if labels.len() != perm.images.len() {
            return Err(Error::Mismatch("wreath labels must match the permutation size".into()));
        }
        Ok(Self { labels, perm })
    }

    pub fn level(&self) -> usize {
        self.perm.level()
    }
}

pub fn wreath_identity<G: GroupOps>(g: &G, n: usize) -> WreathElem<G::Elem> {
    WreathElem { labels: alloc::vec![g.identity(); n + 1], perm: Perm::identity(n) }
}

/// `(a·b)_i = a_i · b_{γ_a⁻¹(i)}`, permutation part `γ_a γ_b`.
pub fn wreath_mul<G: GroupOps>(
    g: &G,
    a: &WreathElem<G::Elem>,
    b: &WreathElem<G::Elem>,
) -> Result<WreathElem<G::Elem>> {
    if a.labels.len() != b.labels.len() {
        return Err(Error::Mismatch("wreath elements at different levels".into()));
    }
    Ok(wreath_mul_unchecked(g, a, b))
}

pub(crate) fn wreath_mul_unchecked<G: GroupOps>(
    g: &G,
    a: &WreathElem<G::Elem>,
    b: &WreathElem<G::Elem>,
) -> WreathElem<G::Elem> {
    let ainv = a.perm.inverse();
    let labels = (0..a.labels.len()).map(|i| g.mul(&a.labels[i], &b.labels[ainv.apply(i)])).collect();
    WreathElem { labels, perm: a.perm.compose(&b.perm) }
}

/// `(g; γ)⁻¹ = (g_{γ(i)}⁻¹; γ⁻¹)`.
pub fn wreath_inverse<G: GroupOps>(g: &G, a: &WreathElem<G::Elem>) -> WreathElem<G::Elem> {
    let labels = (0..a.labels.len()).map(|i| g.inv(&a.labels[a.perm.apply(i)])).collect();
    WreathElem { labels, perm: a.perm.inverse() }
}

/// Renders `(g0,g1,…;p0,p1,…)` using a label formatter.
pub fn wreath_to_string<E>(a: &WreathElem<E>, label: impl Fn(&E) -> String) -> String {
    let labels: Vec<String> = a.labels.iter().map(label).collect();
    alloc::format!("({};{})", labels.join(","), a.perm)
}

/// Parses `(g0,g1,…;p0,p1,…)` with a label parser; an empty label list
/// means all identities.
pub fn parse_wreath<E: Clone>(
    s: &str,
    identity: E,
    label: impl Fn(&str) -> Result<E>,
) -> Result<WreathElem<E>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(alloc::format!("wreath literal `{s}` needs parentheses")))?;
    let (ls, ps) = inner
        .split_once(';')
        .ok_or_else(|| Error::Parse(alloc::format!("wreath literal `{s}` needs `;`")))?;
    let perm = Perm::new(&crate::ordmap::parse_usize_list(ps)?)?;
    let labels: Vec<E> = if ls.trim().is_empty() {
        alloc::vec![identity; perm.images.len()]
    } else {
        ls.split(',').map(|t| label(t.trim())).collect::<Result<_>>()?
    };
    WreathElem::new(labels, perm)
}

/// Parity names used in JSON and literals.
pub fn parity_sign(odd: bool) -> char {
    if odd {
        '-'
    } else {
        '+'
    }
}

/// Named lookup for every element of a table group.
pub fn name_index(g: &ParityGroup) -> BTreeMap<String, usize> {
    g.names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect()
}
