//! Bar constructions as matrices, chain complexes over exact fields, and
//! their homology.
//!
//! Level `n` of every bar construction is `A^{⊗(n+1)}`. A basis tensor
//! `e_{b_0} ⊗ … ⊗ e_{b_n}` has index `Σ b_i d^{n-i}`, slot 0 most
//! significant. Homology computed from a complex built through degree `N`
//! is reported for degrees `0..N` only, since `H_N` would need `d_{N+1}`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::csg::{canonical_parity, duality, lambda_tilde, CsgInstance, CsgMorphism, Family, GElem};
use crate::envelope::{F_inv, Whiskered};
use crate::error::{Error, Result};
use crate::field::{Echelon, Field, Matrix, SparseVec};
use crate::gpar::GroupOps;
use crate::ordmap::OrdMap;
use crate::twalg::{operad_eval, TwistedAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// `d^k`, or an error when the bar level would not fit in memory anyway.
fn tensor_dim(d: usize, k: usize) -> Result<usize> {
    d.checked_pow(k as u32)
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| Error::Unsupported(alloc::format!("{d}^{k} basis tensors is beyond reach")))
}

fn digits(mut idx: usize, d: usize, k: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// `v_0 ⊗ … ⊗ v_k` as a sparse vector.
fn kron<F: Field>(f: &F, slots: &[Vec<F::Elem>]) -> SparseVec<F::Elem> {
    let mut acc: SparseVec<F::Elem> = alloc::vec![(0, f.one())];
    for v in slots {
        let d = v.len();
        let mut next = Vec::with_capacity(acc.len() * d);
        for (i, c) in &acc {
            for (t, x) in v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
                next.push((i * d + t, f.mul(c, x)));
            }
        }
        acc = next;
    }
    acc
}

/// The matrix `A^{⊗k_in} → A^{⊗k_out}` sending a basis tensor, given by
/// its slot indices, to the tensor product of the vectors `image` returns.
pub fn tensor_map<F: Field>(
    a: &TwistedAlgebra<F>,
    k_in: usize,
    k_out: usize,
    mut image: impl FnMut(&[usize]) -> Vec<Vec<F::Elem>>,
) -> Result<Matrix<F::Elem>> {
    let d = a.dim();
    let cols = tensor_dim(d, k_in)?;
    let rows = tensor_dim(d, k_out)?;
    let columns = (0..cols)
        .map(|c| {
            let slots = image(&digits(c, d, k_in));
            debug_assert_eq!(slots.len(), k_out);
            kron(a.field(), &slots)
        })
        .collect();
    Ok(Matrix::from_columns(rows, columns))
}

/// `B^•` or `B_•` of an algebra over an instance.
#[derive(Clone, Debug)]
pub struct BarFunctor<F: Field> {
    inst: CsgInstance,
    /// Where the duality is evaluated: the dihedral instance for the
    /// reflexive one, otherwise `inst` itself.
    host: CsgInstance,
    alg: TwistedAlgebra<F>,
    variance: Variance,
}

impl<F: Field> BarFunctor<F> {
    pub fn new(inst: CsgInstance, alg: TwistedAlgebra<F>, variance: Variance) -> Result<Self> {
        let g0 = canonical_parity(&inst);
        if !alg.group().same_structure(&g0) {
            return Err(Error::Mismatch(alloc::format!(
                "the algebra's group must be G₀ of {} with its canonical parity (order {}, parities {:?})",
                inst.name(),
                g0.order(),
                g0.parities()
            )));
        }
        let host = match (variance, inst.family()) {
            (Variance::Covariant, _) => inst.clone(),
            (Variance::Contravariant, _) if inst.is_self_dual() => inst.clone(),
            (Variance::Contravariant, Family::Reflexive) => match inst.corruption() {
                Some(c) => CsgInstance::dihedral().with_corruption(c),
                None => CsgInstance::dihedral(),
            },
            (Variance::Contravariant, _) => {
                return Err(Error::Unsupported(alloc::format!(
                    "the contravariant bar construction needs a self-dual instance, not {}",
                    inst.name()
                )))
            }
        };
        Ok(Self { inst, host, alg, variance })
    }

    pub fn instance(&self) -> &CsgInstance {
        &self.inst
    }

    pub fn algebra(&self) -> &TwistedAlgebra<F> {
        &self.alg
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn level_dim(&self, n: usize) -> Result<usize> {
        tensor_dim(self.alg.dim(), n + 1)
    }

    /// The linear map of `f`: `A^{⊗(m+1)} → A^{⊗(n+1)}` for covariant
    /// functors and `A^{⊗(n+1)} → A^{⊗(m+1)}` for contravariant ones,
    /// where `f: [m] → [n]`.
    pub fn bar_matrix(&self, f: &CsgMorphism) -> Result<Matrix<F::Elem>> {
        self.inst.check_elem(&f.g)?;
        match self.variance {
            Variance::Covariant => covariant_matrix(&self.alg, &self.inst, f),
            Variance::Contravariant => covariant_matrix(&self.alg, &self.host, &duality(&self.host, f)?),
        }
    }
}

/// `Δ𝐆 → Δλ₀≀Σ → Env(Assoc^{λ₀}) → Vect`. Env labels compose in the
/// opposite order to wreath labels, so a wreath label `ℓ` enters the
/// envelope as `ℓ⁻¹`.
fn covariant_matrix<F: Field>(alg: &TwistedAlgebra<F>, inst: &CsgInstance, f: &CsgMorphism) -> Result<Matrix<F::Elem>> {
    let k = alg.group();
    let mut ts = lambda_tilde(inst, f);
    for l in &mut ts.g.labels {
        *l = k.inv(l);
    }
    let env = F_inv(&Whiskered::Map(ts));
    let fibers: Vec<_> = (0..env.dst())
        .map(|j| {
            let mut members = env.orders()[j].clone();
            members.sort_unstable();
            (env.fiber_operation(j), members)
        })
        .collect();
    let basis: Vec<Vec<F::Elem>> = (0..alg.dim()).map(|i| alg.basis_vector(i)).collect();
    tensor_map(alg, f.src() + 1, f.dst() + 1, |b| {
        fibers
            .iter()
            .map(|(op, members)| {
                let args: Vec<Vec<F::Elem>> = members.iter().map(|&x| basis[b[x]].clone()).collect();
                operad_eval(alg, op, &args).expect("fiber arity matches")
            })
            .collect()
    })
}

/// A chain complex `C_0 ← C_1 ← … ← C_N`; `d[n]: C_n → C_{n-1}`, with
/// `d[0]` the zero map out of `C_0`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    d: Vec<Matrix<F::Elem>>,
}

impl<F: Field> ChainComplex<F> {
    /// `diffs[n-1]` is `d_n` for `n = 1..=N`. Checks shapes and `d∘d = 0`.
    pub fn new(field: F, dims: Vec<usize>, diffs: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::Mismatch("a complex through degree N needs N+1 dimensions and N differentials".into()));
        }
        let mut d = alloc::vec![Matrix::zero(0, dims[0])];
        d.extend(diffs);
        for n in 1..dims.len() {
            if d[n].rows() != dims[n - 1] || d[n].cols() != dims[n] {
                return Err(Error::Mismatch(alloc::format!("d_{n} has the wrong shape")));
            }
            if n >= 2 && !d[n - 1].mul(&field, &d[n])?.is_zero() {
                return Err(Error::Invalid(alloc::format!("d_{} ∘ d_{n} ≠ 0", n - 1)));
            }
        }
        Ok(Self { field, dims, d })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// `d_n: C_n → C_{n-1}`; `d_0` is zero.
    pub fn differential(&self, n: usize) -> &Matrix<F::Elem> {
        &self.d[n]
    }
}

/// `dim H_n = dim C_n − rank d_n − rank d_{n+1}` for every degree of the
/// complex, treating `d_{N+1}` as zero.
pub fn homology_of_complex<F: Field>(c: &ChainComplex<F>) -> Vec<usize> {
    let ranks: Vec<usize> = c.d.iter().map(|m| m.rank(&c.field)).collect();
    (0..c.dims.len())
        .map(|n| c.dims[n] - ranks[n] - ranks.get(n + 1).copied().unwrap_or(0))
        .collect()
}

/// The subcomplex spanned by `rels[n]` in each degree is divided out;
/// fails with `DescentFailure` when `d` does not preserve it.
pub fn quotient_complex<F: Field>(c: &ChainComplex<F>, rels: &[Echelon<F::Elem>]) -> Result<ChainComplex<F>> {
    let f = &c.field;
    let top = c.top_degree();
    if rels.len() != top + 1 {
        return Err(Error::Mismatch("one relation space per degree".into()));
    }
    // quotient basis: the non-pivot coordinates
    let keep: Vec<Vec<usize>> = (0..=top).map(|n| (0..c.dims[n]).filter(|&i| !rels[n].is_pivot(i)).collect()).collect();
    let position: Vec<Vec<usize>> = (0..=top)
        .map(|n| {
            let mut p = alloc::vec![usize::MAX; c.dims[n]];
            for (k, &i) in keep[n].iter().enumerate() {
                p[i] = k;
            }
            p
        })
        .collect();
    let mut diffs = Vec::with_capacity(top);
    for n in 1..=top {
        for r in rels[n].rows() {
            if !rels[n - 1].reduce(f, &c.d[n].apply(f, r)).is_empty() {
                return Err(Error::DescentFailure { degree: n });
            }
        }
        let columns = keep[n]
            .iter()
            .map(|&i| {
                rels[n - 1]
                    .reduce(f, c.d[n].column(i))
                    .into_iter()
                    .map(|(r, x)| (position[n - 1][r], x))
                    .collect()
            })
            .collect();
        diffs.push(Matrix::from_columns(keep[n - 1].len(), columns));
    }
    ChainComplex::new(f.clone(), keep.iter().map(|k| k.len()).collect(), diffs)
}

/// The simplicial vector space behind the homology computations: faces and
/// degeneracies of `B_•`, and the action of `G_n` on level `n`.
struct Simplicial<F: Field> {
    faces: BarFunctor<F>,
    /// For instances without a duality of their own: faces come from the
    /// cyclic bar construction of the underlying algebra and `g` acts as
    /// `B^•(g⁻¹)`.
    borrowed: Option<BarFunctor<F>>,
}

impl<F: Field> Simplicial<F> {
    fn new(inst: &CsgInstance, alg: &TwistedAlgebra<F>) -> Result<Self> {
        if inst.is_self_dual() || matches!(inst.family(), Family::Reflexive) {
            return Ok(Self { faces: BarFunctor::new(inst.clone(), alg.clone(), Variance::Contravariant)?, borrowed: None });
        }
        let own = BarFunctor::new(inst.clone(), alg.clone(), Variance::Covariant)?;
        let faces = BarFunctor::new(CsgInstance::cyclic(), alg.forget_action(), Variance::Contravariant)?;
        Ok(Self { faces, borrowed: Some(own) })
    }

    fn from_bar(b: &BarFunctor<F>) -> Self {
        Self { faces: b.clone(), borrowed: None }
    }

    fn map(&self, phi: OrdMap) -> Result<Matrix<F::Elem>> {
        let inst = self.faces.instance();
        self.faces.bar_matrix(&inst.from_map(phi))
    }

    /// `d_i: C_n → C_{n-1}`.
    fn face(&self, n: usize, i: usize) -> Result<Matrix<F::Elem>> {
        self.map(OrdMap::face(n, i)?)
    }

    /// `s_j: C_n → C_{n+1}`.
    fn degeneracy(&self, n: usize, j: usize) -> Result<Matrix<F::Elem>> {
        self.map(OrdMap::degeneracy(n, j)?)
    }

    fn act(&self, g: &GElem) -> Result<Matrix<F::Elem>> {
        match &self.borrowed {
            None => self.faces.bar_matrix(&self.faces.instance().from_elem(g.clone())),
            Some(own) => {
                let inst = own.instance();
                own.bar_matrix(&inst.from_elem(inst.inv(g)))
            }
        }
    }

    fn moore(&self, top: usize) -> Result<ChainComplex<F>> {
        let f = self.faces.algebra().field().clone();
        let dims = (0..=top).map(|n| self.faces.level_dim(n)).collect::<Result<Vec<_>>>()?;
        let minus = f.from_i64(-1);
        let mut diffs = Vec::with_capacity(top);
        for n in 1..=top {
            let mut d = Matrix::zero(dims[n - 1], dims[n]);
            for i in 0..=n {
                let di = self.face(n, i)?;
                d = d.add(&f, &if i % 2 == 0 { di } else { di.scale(&f, &minus) })?;
            }
            diffs.push(d);
        }
        ChainComplex::new(f, dims, diffs)
    }

    fn degenerate_part(&self, top: usize) -> Result<Vec<Echelon<F::Elem>>> {
        let f = self.faces.algebra().field();
        let mut rels = alloc::vec![Echelon::new()];
        for n in 1..=top {
            let mut e = Echelon::new();
            for j in 0..n {
                for col in self.degeneracy(n - 1, j)?.columns() {
                    e.insert(f, col);
                }
            }
            rels.push(e);
        }
        Ok(rels)
    }
}

/// The Moore complex `C_n = A^{⊗(n+1)}`, `d = Σ (−1)^i d_i`, through
/// degree `top`; `normalized` divides out degenerate tensors.
pub fn moore_complex<F: Field>(b: &BarFunctor<F>, top: usize, normalized: bool) -> Result<ChainComplex<F>> {
    if b.variance() != Variance::Contravariant {
        return Err(Error::Unsupported("the Moore complex needs the contravariant bar construction".into()));
    }
    let s = Simplicial::from_bar(b);
    let c = s.moore(top)?;
    if normalized {
        quotient_complex(&c, &s.degenerate_part(top)?)
    } else {
        Ok(c)
    }
}

/// `H_0 … H_{degrees-1}` of the Moore complex of `B_•(A)`.
pub fn hochschild_homology<F: Field>(inst: &CsgInstance, a: &TwistedAlgebra<F>, degrees: usize) -> Result<Vec<usize>> {
    let b = BarFunctor::new(inst.clone(), a.clone(), Variance::Contravariant)?;
    let mut h = homology_of_complex(&moore_complex(&b, degrees, false)?);
    h.truncate(degrees);
    Ok(h)
}

fn check_orders<F: Field>(inst: &CsgInstance, f: &F, top: usize) -> Result<()> {
    let p = f.characteristic();
    if p == 0 {
        return Ok(());
    }
    for n in 0..=top {
        let order = inst.level_order(n);
        if order as u64 % p == 0 {
            return Err(Error::NonInvertibleOrder { level: n, order, p });
        }
    }
    Ok(())
}

/// Levelwise `C_n / span{v − sign(θ_g)·g·v}` over the generators of `G_n`,
/// with the induced differential, through degree `top`.
pub fn coinvariant_complex<F: Field>(inst: &CsgInstance, a: &TwistedAlgebra<F>, top: usize) -> Result<ChainComplex<F>> {
    let f = a.field();
    check_orders(inst, f, top)?;
    let s = Simplicial::new(inst, a)?;
    let c = s.moore(top)?;
    let mut rels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut e = Echelon::new();
        for g in inst.generators(n) {
            let m = s.act(&g)?;
            let sign = f.from_i64(inst.theta(&g).sign() as i64);
            for i in 0..m.cols() {
                let mut v: alloc::collections::BTreeMap<usize, F::Elem> = alloc::collections::BTreeMap::new();
                v.insert(i, f.one());
                crate::field::axpy(f, &mut v, &f.neg(&sign), m.column(i));
                e.insert(f, &crate::field::to_sparse(f, v));
            }
        }
        rels.push(e);
    }
    quotient_complex(&c, &rels)
}

/// `H_0 … H_{degrees-1}` of the coinvariant complex. For the symmetric,
/// hyperoctahedral and twisted symmetric instances this is
/// coinvariant-complex homology, not a verified colimit.
pub fn positive_homology<F: Field>(inst: &CsgInstance, a: &TwistedAlgebra<F>, degrees: usize) -> Result<Vec<usize>> {
    let mut h = homology_of_complex(&coinvariant_complex(inst, a, degrees)?);
    h.truncate(degrees);
    Ok(h)
}

/// Cyclic homology `HC_0 … HC_{degrees-1}` from Connes' `(b, B)` bicomplex
/// on normalized Hochschild chains `A ⊗ Ā^{⊗n}`, `Ā = A / k·1`. Written
/// against the algebra's structure constants only.
pub fn connes_oracle<F: Field>(a: &TwistedAlgebra<F>, degrees: usize) -> Result<Vec<usize>> {
    let f = a.field();
    if f.characteristic() != 0 {
        return Err(Error::Unsupported("the (b, B) oracle computes cyclic homology over ℚ only".into()));
    }
    let d = a.dim();
    let unit = a.unit().to_vec();
    let p = unit.iter().position(|x| !f.is_zero(x)).expect("nonzero unit");
    let up_inv = f.inv(&unit[p]).expect("nonzero");
    // Ā has basis e_j, j ≠ p
    let bar_basis: Vec<usize> = (0..d).filter(|&j| j != p).collect();
    let project = |v: &[F::Elem]| -> Vec<F::Elem> {
        let c = f.mul(&v[p], &up_inv);
        bar_basis.iter().map(|&j| f.sub(&v[j], &f.mul(&c, &unit[j]))).collect()
    };
    let e = |i: usize| a.basis_vector(i);
    let db = bar_basis.len();
    let chain_dim = |n: usize| d * db.pow(n as u32);
    // basis tensor a_0 ⊗ ā_1 ⊗ … ⊗ ā_n as A-vectors
    let decode = |mut idx: usize, n: usize| -> Vec<Vec<F::Elem>> {
        let mut slots = alloc::vec![Vec::new(); n + 1];
        for s in (1..=n).rev() {
            slots[s] = e(bar_basis[idx % db]);
            idx /= db;
        }
        slots[0] = e(idx);
        slots
    };
    let encode = |slots: &[Vec<F::Elem>]| -> SparseVec<F::Elem> {
        let mut proj = alloc::vec![slots[0].clone()];
        proj.extend(slots[1..].iter().map(|v| project(v)));
        kron(f, &proj)
    };
    let add_into = |acc: &mut alloc::collections::BTreeMap<usize, F::Elem>, sign: i64, v: SparseVec<F::Elem>| {
        crate::field::axpy(f, acc, &f.from_i64(sign), &v);
    };
    // b: C̄_n → C̄_{n-1}
    let b_map = |n: usize| -> Matrix<F::Elem> {
        let cols = (0..chain_dim(n))
            .map(|idx| {
                let s = decode(idx, n);
                let mut acc = alloc::collections::BTreeMap::new();
                for i in 0..n {
                    let mut t: Vec<Vec<F::Elem>> = s[..i].to_vec();
                    t.push(a.mul(&s[i], &s[i + 1]));
                    t.extend(s[i + 2..].iter().cloned());
                    add_into(&mut acc, if i % 2 == 0 { 1 } else { -1 }, encode(&t));
                }
                let mut t = alloc::vec![a.mul(&s[n], &s[0])];
                t.extend(s[1..n].iter().cloned());
                add_into(&mut acc, if n % 2 == 0 { 1 } else { -1 }, encode(&t));
                crate::field::to_sparse(f, acc)
            })
            .collect();
        Matrix::from_columns(chain_dim(n - 1), cols)
    };
    // B: C̄_n → C̄_{n+1}
    let big_b = |n: usize| -> Matrix<F::Elem> {
        let cols = (0..chain_dim(n))
            .map(|idx| {
                let s = decode(idx, n);
                let mut acc = alloc::collections::BTreeMap::new();
                for i in 0..=n {
                    let mut t = alloc::vec![unit.clone()];
                    t.extend(s[i..].iter().cloned());
                    t.extend(s[..i].iter().cloned());
                    add_into(&mut acc, if (n * i) % 2 == 0 { 1 } else { -1 }, encode(&t));
                }
                crate::field::to_sparse(f, acc)
            })
            .collect();
        Matrix::from_columns(chain_dim(n + 1), cols)
    };
    // Tot_n = ⊕_q C̄_{n-2q}, components ordered by q
    let top = degrees;
    let offsets = |n: usize| -> Vec<usize> {
        let mut off = alloc::vec![0];
        for q in 0..=n / 2 {
            off.push(off[q] + chain_dim(n - 2 * q));
        }
        off
    };
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for n in 0..=top {
        let off = offsets(n);
        dims.push(*off.last().expect("nonempty"));
        if n == 0 {
            continue;
        }
        let below = offsets(n - 1);
        let mut cols: Vec<SparseVec<F::Elem>> = Vec::new();
        for q in 0..=n / 2 {
            let k = n - 2 * q;
            let bm = if k >= 1 && q <= (n - 1) / 2 { Some(b_map(k)) } else { None };
            let bb = if q >= 1 { Some(big_b(k)) } else { None };
            for j in 0..chain_dim(k) {
                let mut col: SparseVec<F::Elem> = Vec::new();
                if let Some(bb) = &bb {
                    col.extend(bb.column(j).iter().map(|(r, x)| (below[q - 1] + r, x.clone())));
                }
                if let Some(bm) = &bm {
                    col.extend(bm.column(j).iter().map(|(r, x)| (below[q] + r, x.clone())));
                }
                cols.push(col);
            }
        }
        diffs.push(Matrix::from_columns(dims[n - 1], cols));
    }
    let c = ChainComplex::new(f.clone(), dims, diffs)?;
    let mut h = homology_of_complex(&c);
    h.truncate(degrees);
    Ok(h)
}

#[derive(Clone, Debug, Default)]
pub struct FormulaReport {
    /// Generators whose matrix differs from the closed formula, e.g.
    /// `"σ_0 at level 1"`.
    pub mismatches: Vec<String>,
    pub checked: usize,
}

impl FormulaReport {
    pub fn is_empty(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `B_•` on every face, degeneracy, `x_n` and `y_n` with target
/// level at most `top` against the closed dihedral and quaternionic
/// formulas, with `t` the generator of the algebra's group:
///
/// * `d_i`: multiply `r_i r_{i+1}`; `d_n`: `t²(r_n) r_0 ⊗ r_1 ⊗ … ⊗ r_{n-1}`
/// * `s_i`: insert `1` after `r_i`
/// * `x_n`: `t²(r_n) ⊗ r_0 ⊗ … ⊗ r_{n-1}`
/// * `y_n`: `t(r_0) ⊗ t³(r_n) ⊗ … ⊗ t³(r_1)`
pub fn check_contravariant_formulas<F: Field>(inst: &CsgInstance, a: &TwistedAlgebra<F>, top: usize) -> Result<FormulaReport> {
    if !matches!(inst.family(), Family::Dihedral | Family::Quaternionic) {
        return Err(Error::Unsupported(alloc::format!("closed formulas are stated for the dihedral and quaternionic instances, not {}", inst.name())));
    }
    let bar = BarFunctor::new(inst.clone(), a.clone(), Variance::Contravariant)?;
    let g = a.group();
    let t = |k: usize, v: &[F::Elem]| a.act(g.power(1, k), v);
    let e: Vec<Vec<F::Elem>> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
    let mut rep = FormulaReport::default();
    let mut compare = |name: String, got: Matrix<F::Elem>, want: Matrix<F::Elem>| {
        rep.checked += 1;
        if got != want {
            rep.mismatches.push(name);
        }
    };
    for n in 0..=top {
        for i in 0..=n {
            if n >= 1 {
                let got = bar.bar_matrix(&inst.from_map(OrdMap::face(n, i)?))?;
                let want = tensor_map(a, n + 1, n, |r| {
                    if i < n {
                        let mut out: Vec<Vec<F::Elem>> = r[..i].iter().map(|&b| e[b].clone()).collect();
                        out.push(a.mul(&e[r[i]], &e[r[i + 1]]));
                        out.extend(r[i + 2..].iter().map(|&b| e[b].clone()));
                        out
                    } else {
                        let mut out = alloc::vec![a.mul(&t(2, &e[r[n]]), &e[r[0]])];
                        out.extend(r[1..n].iter().map(|&b| e[b].clone()));
                        out
                    }
                })?;
                compare(alloc::format!("δ_{i} at level {n}"), got, want);
            }
            if n < top {
                let got = bar.bar_matrix(&inst.from_map(OrdMap::degeneracy(n, i)?))?;
                let want = tensor_map(a, n + 1, n + 2, |r| {
                    let mut out: Vec<Vec<F::Elem>> = r[..=i].iter().map(|&b| e[b].clone()).collect();
                    out.push(a.unit().to_vec());
                    out.extend(r[i + 1..].iter().map(|&b| e[b].clone()));
                    out
                })?;
                compare(alloc::format!("σ_{i} at level {n}"), got, want);
            }
        }
        let got = bar.bar_matrix(&inst.from_elem(inst.x(n)?))?;
        let want = tensor_map(a, n + 1, n + 1, |r| {
            let mut out = alloc::vec![t(2, &e[r[n]])];
            out.extend(r[..n].iter().map(|&b| e[b].clone()));
            out
        })?;
        compare(alloc::format!("x_{n}"), got, want);
        let got = bar.bar_matrix(&inst.from_elem(inst.y(n)?))?;
        let want = tensor_map(a, n + 1, n + 1, |r| {
            let mut out = alloc::vec![t(1, &e[r[0]])];
            out.extend(r[1..].iter().rev().map(|&b| t(3, &e[b])));
            out
        })?;
        compare(alloc::format!("y_{n}"), got, want);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::gpar::ParityGroup;
    use crate::twalg::{cyclic_group_algebra, ground_field, quaternions};

    #[test]
    fn homology_of_small_complexes() {
        let f = Rationals;
        let zero = ChainComplex::new(f, alloc::vec![3, 0, 0], alloc::vec![Matrix::zero(3, 0), Matrix::zero(0, 0)]).unwrap();
        assert_eq!(homology_of_complex(&zero), [3, 0, 0]);
        let id = ChainComplex::new(f, alloc::vec![1, 1], alloc::vec![Matrix::identity(&f, 1)]).unwrap();
        assert_eq!(homology_of_complex(&id), [0, 0]);
        let bad = ChainComplex::new(f, alloc::vec![1, 1, 1], alloc::vec![Matrix::identity(&f, 1), Matrix::identity(&f, 1)]);
        assert!(bad.is_err());
    }

    #[test]
    fn covariant_coface_inserts_the_unit() {
        let b = BarFunctor::new(CsgInstance::cyclic(), ground_field(Rationals), Variance::Covariant).unwrap();
        let inst = b.instance().clone();
        let m = b.bar_matrix(&inst.from_map(OrdMap::face(1, 0).unwrap())).unwrap();
        assert_eq!(m.to_dense(&Rationals), alloc::vec![alloc::vec![Rationals.one()]]);
        let id = b.bar_matrix(&inst.identity_morphism(2)).unwrap();
        assert_eq!(id, Matrix::identity(&Rationals, 1));
    }

    #[test]
    fn rejects_mismatched_groups() {
        let h = quaternions(Rationals, true);
        assert!(BarFunctor::new(CsgInstance::cyclic(), h.clone(), Variance::Covariant).is_err());
        assert!(BarFunctor::new(CsgInstance::quaternionic(), h, Variance::Contravariant).is_ok());
        let q2 = cyclic_group_algebra(Rationals, 2, ParityGroup::c2_odd()).unwrap();
        assert!(BarFunctor::new(CsgInstance::hyperoctahedral(), q2, Variance::Contravariant).is_err());
    }

    #[test]
    fn prime_fields_refuse_divisible_orders() {
        let f = crate::field::PrimeField::new(2).unwrap();
        let err = coinvariant_complex(&CsgInstance::cyclic(), &ground_field(f), 2).unwrap_err();
        assert_eq!(err, Error::NonInvertibleOrder { level: 1, order: 2, p: 2 });
    }
}
