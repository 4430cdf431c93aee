//! Exhaustive and sampled verification of the crossed simplicial group
//! identities.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CsgInstance, GElem};
use crate::ordmap::{all_maps, OrdMap};

#[derive(Clone, Debug)]
pub struct AxiomConfig {
    /// Highest level `N`; all Δ-maps with endpoints `≤ N` are enumerated.
    pub max_level: usize,
    /// `G_n` is enumerated exhaustively when `|G_n|` is at most this.
    pub exhaustive_bound: usize,
    /// Number of seeded samples from `G_n` above the bound.
    pub samples: usize,
    /// Above this many checks per level, the second map `ψ` in (1.h)/(2.h)
    /// runs over faces and degeneracies and the second element `h` in
    /// (1.v)/(2.v) over generators plus random elements. Both identities
    /// are multiplicative in that argument, so generators suffice.
    pub pair_budget: usize,
    pub extra_random_h: usize,
    pub seed: u64,
    /// Stored witnesses per identity; violations are always counted.
    pub max_witnesses: usize,
}

impl AxiomConfig {
    pub fn new(max_level: usize) -> Self {
        Self {
            max_level,
            exhaustive_bound: 5000,
            samples: 10_000,
            pair_budget: 20_000_000,
            extra_random_h: 16,
            seed: 0,
            max_witnesses: 3,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    /// Violation counts by identity name.
    pub counts: BTreeMap<&'static str, usize>,
    /// Checks performed by identity name.
    pub checks: BTreeMap<&'static str, usize>,
    /// Levels where group elements were sampled rather than enumerated.
    pub sampled_levels: Vec<usize>,
    /// Levels where a pair identity used generators for its second argument.
    pub reduced_levels: Vec<usize>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.counts.keys().copied().collect()
    }

}

const IDENTITIES: [&str; 6] = ["(1.h)", "(2.h)", "(1.v)", "(2.v)", "(3.h)", "(3.v)"];
const H1: usize = 0;
const H2: usize = 1;
const V1: usize = 2;
const V2: usize = 3;
const H3: usize = 4;
const V3: usize = 5;

/// Counters for the hot loops; folded into an `AxiomReport` at the end.
#[derive(Default)]
struct Tally {
    checks: [usize; 6],
    counts: [usize; 6],
    violations: Vec<Violation>,
}

impl Tally {
    #[inline]
    fn record(&mut self, cfg: &AxiomConfig, id: usize, ok: bool, witness: impl FnOnce() -> String) {
        self.checks[id] += 1;
        if ok {
            return;
        }
        self.counts[id] += 1;
        if self.counts[id] <= cfg.max_witnesses {
            self.violations.push(Violation { identity: IDENTITIES[id], witness: witness() });
        }
    }

    fn fold_into(self, rep: &mut AxiomReport) {
        for (id, name) in IDENTITIES.iter().enumerate() {
            if self.checks[id] > 0 {
                rep.checks.insert(name, self.checks[id]);
            }
            if self.counts[id] > 0 {
                rep.counts.insert(name, self.counts[id]);
            }
        }
        rep.violations = self.violations;
    }
}

/// Checks (1.h)–(3.v) through `cfg.max_level`.
pub fn verify_axioms(inst: &CsgInstance, cfg: &AxiomConfig) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let big_n = cfg.max_level;
    let fm = |f: &OrdMap| alloc::format!("{f}");

    for n in 0..=big_n {
        let order = inst.level_order(n);
        let pool: Vec<GElem> = if order <= cfg.exhaustive_bound {
            inst.elements(n)
        } else {
            rep.sampled_levels.push(n);
            (0..cfg.samples).map(|_| inst.random_element(n, &mut rng)).collect()
        };
        let into_n: Vec<OrdMap> = (0..=big_n).flat_map(|m| all_maps(m, n)).collect();
        let e = inst.identity(n);

        // (3.h) and (3.v)
        for g in &pool {
            let ok = inst.star_elem_unchecked(&OrdMap::identity(n), g) == *g;
            t.record(cfg, H3, ok, || alloc::format!("id*g ≠ g for g = {}", inst.fmt_elem(g)));
            let ok = inst.star_map_unchecked(g, &OrdMap::identity(n)).is_identity();
            t.record(cfg, V3, ok, || alloc::format!("g*id ≠ id for g = {}", inst.fmt_elem(g)));
        }
        for phi in &into_n {
            let ok = inst.star_elem_unchecked(phi, &e) == inst.identity(phi.src());
            t.record(cfg, H3, ok, || alloc::format!("φ*e ≠ e for φ = {}", fm(phi)));
            let ok = inst.star_map_unchecked(&e, phi) == *phi;
            t.record(cfg, V3, ok, || alloc::format!("e*φ ≠ φ for φ = {}", fm(phi)));
        }

        // (1.h) and (2.h) over composable pairs φ : [m] → [n], ψ : [k] → [m]
        let all_pairs: usize = (0..=big_n)
            .map(|m| all_maps(m, n).len() * (0..=big_n).map(|k| all_maps(k, m).len()).sum::<usize>())
            .sum();
        let reduce_maps = pool.len().saturating_mul(all_pairs) > cfg.pair_budget;
        let mut second: Vec<Vec<OrdMap>> = Vec::with_capacity(big_n + 1);
        for m in 0..=big_n {
            if reduce_maps {
                let mut gens = Vec::new();
                if m >= 1 {
                    gens.extend((0..=m).map(|i| OrdMap::face(m, i).expect("face")));
                }
                if m < big_n {
                    gens.extend((0..=m).map(|i| OrdMap::degeneracy(m, i).expect("degeneracy")));
                }
                second.push(gens);
            } else {
                second.push((0..=big_n).flat_map(|k| all_maps(k, m)).collect());
            }
        }
        for g in &pool {
            for phi in &into_n {
                let pg = inst.star_elem_unchecked(phi, g);
                let gphi = inst.star_map_unchecked(g, phi);
                for psi in &second[phi.src()] {
                    let comp = phi.compose_unchecked(psi);
                    let lhs = inst.star_elem_unchecked(&comp, g);
                    let rhs = inst.star_elem_unchecked(psi, &pg);
                    t.record(cfg, H1, lhs == rhs, || {
                        alloc::format!(
                            "(φ∘ψ)*g ≠ ψ*(φ*g) for φ = {}, ψ = {}, g = {}",
                            fm(phi),
                            fm(psi),
                            inst.fmt_elem(g)
                        )
                    });
                    let lhs = inst.star_map_unchecked(g, &comp);
                    let rhs = gphi.compose_unchecked(&inst.star_map_unchecked(&pg, psi));
                    t.record(cfg, H2, lhs == rhs, || {
                        alloc::format!(
                            "g*(φ∘ψ) ≠ g*φ ∘ (φ*g)*ψ for φ = {}, ψ = {}, g = {}",
                            fm(phi),
                            fm(psi),
                            inst.fmt_elem(g)
                        )
                    });
                }
            }
        }
        if reduce_maps {
            rep.reduced_levels.push(n);
        }

        // (1.v) and (2.v) over pairs g, h ∈ G_n
        let full = pool.len().saturating_mul(pool.len()).saturating_mul(into_n.len()) <= cfg.pair_budget;
        let hs: Vec<GElem> = if full {
            pool.clone()
        } else {
            let mut hs = inst.generators(n);
            hs.extend((0..cfg.extra_random_h).map(|_| inst.random_element(n, &mut rng)));
            if !rep.reduced_levels.contains(&n) {
                rep.reduced_levels.push(n);
            }
            hs
        };
        for g in &pool {
            let products: Vec<GElem> = hs.iter().map(|h| inst.mul(g, h)).collect();
            for phi in &into_n {
                let gphi = inst.star_map_unchecked(g, phi);
                let pg = inst.star_elem_unchecked(phi, g);
                for (h, gh) in hs.iter().zip(&products) {
                    let lhs = inst.star_map_unchecked(gh, phi);
                    let rhs = inst.star_map_unchecked(h, &gphi);
                    t.record(cfg, V1, lhs == rhs, || {
                        alloc::format!(
                            "(gh)*φ ≠ h*(g*φ) for g = {}, h = {}, φ = {}",
                            inst.fmt_elem(g),
                            inst.fmt_elem(h),
                            fm(phi)
                        )
                    });
                    let lhs = inst.star_elem_unchecked(phi, gh);
                    let rhs = inst.mul(&pg, &inst.star_elem_unchecked(&gphi, h));
                    t.record(cfg, V2, lhs == rhs, || {
                        alloc::format!(
                            "φ*(gh) ≠ φ*g · (g*φ)*h for g = {}, h = {}, φ = {}",
                            inst.fmt_elem(g),
                            inst.fmt_elem(h),
                            fm(phi)
                        )
                    });
                }
            }
        }
    }
    t.fold_into(&mut rep);
    rep
}
