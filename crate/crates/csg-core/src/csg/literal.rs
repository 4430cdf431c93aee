//! Text literals for automorphisms and morphisms.
//!
//! Elements: `x^r y^s @ n` (any word in `x`, `y`, `e`, with `^-1` allowed),
//! a wreath `(g0,g1,…;p0,p1,…)` with label names, `(;p0,…)` for a bare
//! permutation, and a `[h=name]` suffix for the factor of a product with a
//! group. Morphisms: `gens * elem`, e.g. `s0 * y@2` meaning `σ₀ ∘ y₂`, or
//! `[0,0,2]@2 * e@2` with a raw map.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{CsgInstance, CsgMorphism, Family, GElem};
use crate::error::{Error, Result};
use crate::gpar::{self, Perm, WreathElem};
use crate::ordmap::{self, generator_string, OrdMap};

pub fn format_elem(inst: &CsgInstance, g: &GElem) -> String {
    match (inst.family(), g) {
        (Family::ProductWithGroup(inner, h), GElem::Pair(g, k)) => {
            alloc::format!("{}[h={}]", format_elem(inner, g), h.name(*k))
        }
        (_, GElem::Xy { n, a, b }) => {
            let mut parts = Vec::new();
            match a {
                0 => {}
                1 => parts.push("x".to_string()),
                _ => parts.push(alloc::format!("x^{a}")),
            }
            if *b == 1 {
                parts.push("y".to_string());
            }
            if parts.is_empty() {
                parts.push("e".to_string());
            }
            alloc::format!("{}@{n}", parts.join(" "))
        }
        (_, GElem::Perm(p)) => alloc::format!("(;{p})"),
        (_, GElem::Wreath(w)) => {
            let k = inst.labels().expect("wreath family");
            gpar::wreath_to_string(w, |l| k.name(*l).to_string())
        }
        _ => alloc::format!("{g:?}"),
    }
}

pub fn format_morphism(inst: &CsgInstance, f: &CsgMorphism) -> String {
    let gens = if f.ord.is_identity() { "id".to_string() } else { generator_string(&f.ord) };
    alloc::format!("{gens} * {}", format_elem(inst, &f.g))
}

pub fn parse_elem(inst: &CsgInstance, s: &str) -> Result<GElem> {
    let s = s.trim();
    if let Family::ProductWithGroup(inner, h) = inst.family() {
        let (body, tag) = match s.rfind("[h=") {
            Some(i) => {
                let tag = s[i + 3..]
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Parse(alloc::format!("unterminated `[h=` in `{s}`")))?;
                (&s[..i], Some(tag.trim()))
            }
            None => (s, None),
        };
        let g = parse_elem(inner, body)?;
        let k = match tag {
            None => 0,
            Some(t) => h
                .index_of(t)
                .or_else(|| t.parse::<usize>().ok().filter(|&k| k < h.order()))
                .ok_or_else(|| Error::Parse(alloc::format!("unknown group element `{t}`")))?,
        };
        return Ok(GElem::Pair(Box::new(g), k));
    }
    match inst.family() {
        Family::Symmetric => {
            let w = gpar::parse_wreath(s, 0usize, |_| Ok(0))?;
            Ok(GElem::Perm(w.perm))
        }
        Family::Hyperoctahedral | Family::TwistedSymmetric(_) => {
            let k = inst.labels().expect("wreath family");
            let w: WreathElem<usize> = gpar::parse_wreath(s, 0, |t| {
                k.index_of(t)
                    .or_else(|| t.parse::<usize>().ok().filter(|&i| i < k.order()))
                    .ok_or_else(|| Error::Parse(alloc::format!("unknown label `{t}`")))
            })?;
            Ok(GElem::Wreath(w))
        }
        _ => parse_xy_word(inst, s),
    }
}

fn parse_xy_word(inst: &CsgInstance, s: &str) -> Result<GElem> {
    let (word, level) = s
        .rsplit_once('@')
        .ok_or_else(|| Error::Parse(alloc::format!("`{s}` needs a level, as in `x^2 y@3`")))?;
    let n = ordmap::parse_usize(level)?;
    let mut acc = inst.identity(n);
    // split into letters with optional exponents
    let word: String = word.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = word.as_str();
    while !rest.is_empty() {
        let letter = rest.chars().next().expect("nonempty");
        rest = &rest[1..];
        let mut exp: i64 = 1;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.find(|c: char| !(c.is_ascii_digit() || c == '-')).unwrap_or(r.len());
            exp = r[..end].parse().map_err(|_| Error::Parse(alloc::format!("bad exponent in `{s}`")))?;
            rest = &r[end..];
        }
        let base = match letter {
            'e' => continue,
            'x' => inst.x(n)?,
            'y' => inst.y(n)?,
            other => return Err(Error::Parse(alloc::format!("unexpected `{other}` in `{s}`"))),
        };
        let base = if exp < 0 { inst.inv(&base) } else { base };
        for _ in 0..exp.unsigned_abs() {
            acc = inst.mul(&acc, &base);
        }
    }
    inst.check_elem(&acc)?;
    Ok(acc)
}

pub fn parse_morphism(inst: &CsgInstance, s: &str) -> Result<CsgMorphism> {
    let (lhs, rhs) = s
        .split_once('*')
        .ok_or_else(|| Error::Parse(alloc::format!("morphism `{s}` needs the form `gens * element`")))?;
    let g = parse_elem(inst, rhs)?;
    let n = g.level();
    let lhs = lhs.trim();
    let ord = if lhs.starts_with('[') {
        let f: OrdMap = lhs.parse()?;
        if f.src() != n {
            return Err(Error::Mismatch(alloc::format!("map `{lhs}` does not start at [{n}]")));
        }
        f
    } else if lhs.is_empty() || lhs == "id" {
        OrdMap::identity(n)
    } else {
        let toks: Vec<&str> = lhs.split(|c: char| c.is_whitespace() || c == '.' || c == '∘').filter(|t| !t.is_empty()).collect();
        ordmap::parse_generator_chain(&toks, n)?
    };
    CsgMorphism::new(ord, g)
}

/// Parses a bare permutation `p0,p1,…`.
pub fn parse_perm(s: &str) -> Result<Perm> {
    Perm::new(&ordmap::parse_usize_list(s)?)
}
