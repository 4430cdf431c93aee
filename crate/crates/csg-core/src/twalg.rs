//! Finite-dimensional algebras with a twisted group action: even group
//! elements act by algebra maps, odd ones by anti-maps.
//!
//! Elements are dense coordinate vectors. Matrices here are row-major
//! `m[r][c]`, column `c` being the image of basis vector `c`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::envelope::AssocPhiElem;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gpar::{GroupOps, ParityGroup};

pub type Dense<E> = Vec<Vec<E>>;

#[derive(Clone, Debug)]
pub struct TwistedAlgebra<F: Field> {
    field: F,
    basis: Vec<String>,
    unit: Vec<F::Elem>,
    /// `mult[i][j]` holds the coordinates of `e_i · e_j`.
    mult: Vec<Vec<Vec<F::Elem>>>,
    group: ParityGroup,
    gens: Vec<(usize, Dense<F::Elem>)>,
    /// Action of every group element, derived from the generators along a
    /// breadth-first search; relations are checked by [`TwistedAlgebra::validate`].
    rho: Vec<Dense<F::Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraViolation {
    pub law: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, Default)]
pub struct AlgebraReport {
    pub violations: Vec<AlgebraViolation>,
    pub checks: usize,
}

impl AlgebraReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, law: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(AlgebraViolation { law, witness: witness() });
        }
    }
}

fn mat_vec<F: Field>(f: &F, m: &Dense<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
        .collect()
}

fn mat_mul<F: Field>(f: &F, a: &Dense<F::Elem>, b: &Dense<F::Elem>) -> Dense<F::Elem> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n).map(|c| row.iter().zip(b).fold(f.zero(), |acc, (x, br)| f.add(&acc, &f.mul(x, &br[c])))).collect()
        })
        .collect()
}

pub fn identity_matrix<F: Field>(f: &F, d: usize) -> Dense<F::Elem> {
    (0..d).map(|r| (0..d).map(|c| if r == c { f.one() } else { f.zero() }).collect()).collect()
}

impl<F: Field> TwistedAlgebra<F> {
    /// Checks shapes and derives the action of every group element from
    /// the generator matrices. Algebraic laws are left to `validate`.
    pub fn new(
        field: F,
        basis: Vec<String>,
        unit: Vec<F::Elem>,
        mult: Vec<Vec<Vec<F::Elem>>>,
        group: ParityGroup,
        gens: Vec<(usize, Dense<F::Elem>)>,
    ) -> Result<Self> {
        let d = basis.len();
        if d == 0 {
            return Err(Error::Invalid("an algebra needs at least one basis vector".into()));
        }
        if unit.len() != d {
            return Err(Error::Mismatch(alloc::format!("unit has {} coordinates, dimension is {d}", unit.len())));
        }
        if mult.len() != d || mult.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return Err(Error::Mismatch(alloc::format!("structure tensor must be {d}×{d}×{d}")));
        }
        for (g, m) in &gens {
            if *g >= group.order() {
                return Err(Error::Invalid(alloc::format!("generator index {g} outside the group")));
            }
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(Error::Mismatch(alloc::format!("action of {} must be {d}×{d}", group.name(*g))));
            }
        }
        let mut rho: Vec<Option<Dense<F::Elem>>> = alloc::vec![None; group.order()];
        rho[0] = Some(identity_matrix(&field, d));
        let mut queue = alloc::collections::VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (s, m) in &gens {
                let b = group.mul_idx(*s, a);
                if rho[b].is_none() {
                    rho[b] = Some(mat_mul(&field, m, rho[a].as_ref().expect("visited")));
                    queue.push_back(b);
                }
            }
        }
        let rho = rho
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| Error::Invalid(alloc::format!("generators do not reach {}", group.name(g)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field, basis, unit, mult, group, gens, rho })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn structure(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.mult[i][j]
    }

    pub fn group(&self) -> &ParityGroup {
        &self.group
    }

    pub fn generators(&self) -> &[(usize, Dense<F::Elem>)] {
        &self.gens
    }

    pub fn action(&self, g: usize) -> &Dense<F::Elem> {
        &self.rho[g]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        (0..self.dim()).map(|j| if i == j { self.field.one() } else { self.field.zero() }).collect()
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = alloc::vec![f.zero(); self.dim()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                let c = f.mul(x, y);
                for (o, m) in out.iter_mut().zip(&self.mult[i][j]) {
                    if !f.is_zero(m) {
                        *o = f.add(o, &f.mul(&c, m));
                    }
                }
            }
        }
        out
    }

    pub fn act(&self, g: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        mat_vec(&self.field, &self.rho[g], v)
    }

    /// The same algebra with the trivial group acting.
    pub fn forget_action(&self) -> Self {
        Self {
            field: self.field.clone(),
            basis: self.basis.clone(),
            unit: self.unit.clone(),
            mult: self.mult.clone(),
            group: ParityGroup::trivial(),
            gens: Vec::new(),
            rho: alloc::vec![identity_matrix(&self.field, self.dim())],
        }
    }

    fn show_pair(&self, i: usize, j: usize) -> String {
        alloc::format!("({}, {})", self.basis[i], self.basis[j])
    }

    /// Checks associativity, the unit, the group relations on the
    /// generator matrices, and that every element acts by an algebra map or
    /// anti-map according to its parity and fixes the unit.
    pub fn validate(&self) -> AlgebraReport {
        let f = &self.field;
        let d = self.dim();
        let e: Vec<Vec<F::Elem>> = (0..d).map(|i| self.basis_vector(i)).collect();
        let mut rep = AlgebraReport::default();
        for i in 0..d {
            for j in 0..d {
                let ij = &self.mult[i][j];
                for k in 0..d {
                    let lhs = self.mul(ij, &e[k]);
                    let rhs = self.mul(&e[i], &self.mult[j][k]);
                    rep.check("associativity", lhs == rhs, || {
                        alloc::format!("({}, {}, {})", self.basis[i], self.basis[j], self.basis[k])
                    });
                }
            }
        }
        for i in 0..d {
            let ok = self.mul(&self.unit, &e[i]) == e[i] && self.mul(&e[i], &self.unit) == e[i];
            rep.check("unit", ok, || self.basis[i].clone());
        }
        for (s, m) in &self.gens {
            for a in self.group.elements() {
                let b = self.group.mul_idx(*s, a);
                rep.check("relation", mat_mul(f, m, &self.rho[a]) == self.rho[b], || {
                    alloc::format!("{} · {} ≠ {}", self.group.name(*s), self.group.name(a), self.group.name(b))
                });
            }
        }
        for g in self.group.elements().skip(1) {
            let odd = self.group.is_odd(&g);
            let law = if odd { "anti-homomorphism" } else { "homomorphism" };
            rep.check("unit fixed", self.act(g, &self.unit) == self.unit, || self.group.name(g).to_string());
            for i in 0..d {
                for j in 0..d {
                    let lhs = self.act(g, &self.mult[i][j]);
                    let (a, b) = (self.act(g, &e[i]), self.act(g, &e[j]));
                    let rhs = if odd { self.mul(&b, &a) } else { self.mul(&a, &b) };
                    rep.check(law, lhs == rhs, || alloc::format!("{} on {}", self.group.name(g), self.show_pair(i, j)));
                }
            }
        }
        rep
    }
}

/// `θ_k(op; a_1, …, a_k)`: act on each argument by its label, list them in
/// the operation's order, multiply left to right. Arity 0 gives the unit.
pub fn operad_eval<F: Field>(a: &TwistedAlgebra<F>, op: &AssocPhiElem<usize>, args: &[Vec<F::Elem>]) -> Result<Vec<F::Elem>> {
    if args.len() != op.arity() {
        return Err(Error::Mismatch(alloc::format!("operation of arity {} given {} arguments", op.arity(), args.len())));
    }
    if op.labels.iter().any(|&l| l >= a.group().order()) {
        return Err(Error::Mismatch("label outside the algebra's group".into()));
    }
    if args.iter().any(|v| v.len() != a.dim()) {
        return Err(Error::Mismatch(alloc::format!("arguments must have {} coordinates", a.dim())));
    }
    let mut acc = a.unit().to_vec();
    for &x in &op.order {
        acc = a.mul(&acc, &a.act(op.labels[x], &args[x]));
    }
    Ok(acc)
}

/// A finite monoid by multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FiniteMonoid {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("monoid table must be square over the element list".into()));
        }
        let unit = (0..n)
            .find(|&u| (0..n).all(|x| table[u][x] == x && table[x][u] == x))
            .ok_or_else(|| Error::Invalid("monoid has no unit".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(alloc::format!(
                            "monoid is not associative at ({}, {}, {})",
                            names[a],
                            names[b],
                            names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self { names, table, unit })
    }

    /// `C_n` written multiplicatively, elements `1, g, g^2, …`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => alloc::format!("g^{i}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// The monoid algebra `k[M]` with `G` permuting basis elements; each group
/// generator is given as a map on `M`.
pub fn monoid_algebra<F: Field>(
    field: F,
    m: &FiniteMonoid,
    group: ParityGroup,
    actions: &[(usize, Vec<usize>)],
) -> Result<TwistedAlgebra<F>> {
    let n = m.order();
    for (s, map) in actions {
        if map.len() != n || map.iter().any(|&x| x >= n) {
            return Err(Error::Invalid(alloc::format!("action of {} is not a map on the monoid", group.name(*s))));
        }
        let odd = group.is_odd(s);
        for a in 0..n {
            for b in 0..n {
                let lhs = map[m.mul(a, b)];
                let rhs = if odd { m.mul(map[b], map[a]) } else { m.mul(map[a], map[b]) };
                if lhs != rhs {
                    return Err(Error::Invalid(alloc::format!(
                        "{} does not act by a monoid {} on ({}, {})",
                        group.name(*s),
                        if odd { "anti-map" } else { "map" },
                        m.names[a],
                        m.names[b]
                    )));
                }
            }
        }
    }
    let e = |i: usize| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect::<Vec<_>>();
    let mult = (0..n).map(|a| (0..n).map(|b| e(m.mul(a, b))).collect()).collect();
    let gens = actions
        .iter()
        .map(|(s, map)| {
            let dense = (0..n)
                .map(|r| (0..n).map(|c| if map[c] == r { field.one() } else { field.zero() }).collect())
                .collect();
            (*s, dense)
        })
        .collect();
    let unit = e(m.unit);
    TwistedAlgebra::new(field, m.names.clone(), unit, mult, group, gens)
}

/// `k[C_n]` where the odd generators of a cyclic `group` act by inversion
/// and the even ones trivially.
pub fn cyclic_group_algebra<F: Field>(field: F, n: usize, group: ParityGroup) -> Result<TwistedAlgebra<F>> {
    let m = FiniteMonoid::cyclic(n);
    let actions = group
        .generators()
        .into_iter()
        .map(|s| {
            let map = if group.is_odd(&s) { (0..n).map(|a| (n - a) % n).collect() } else { (0..n).collect() };
            (s, map)
        })
        .collect::<Vec<_>>();
    monoid_algebra(field, &m, group, &actions)
}

/// The ground field as a one-dimensional algebra.
pub fn ground_field<F: Field>(field: F) -> TwistedAlgebra<F> {
    let one = alloc::vec![field.one()];
    TwistedAlgebra::new(field, alloc::vec!["1".to_string()], one.clone(), alloc::vec![alloc::vec![one]], ParityGroup::trivial(), Vec::new())
        .expect("one-dimensional")
}

/// `k[x]/(x^n)` with the trivial action.
pub fn truncated_polynomial<F: Field>(field: F, n: usize) -> Result<TwistedAlgebra<F>> {
    if n == 0 {
        return Err(Error::Invalid("k[x]/(x^0) is the zero ring".into()));
    }
    let e = |i: usize| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect::<Vec<_>>();
    let zero = alloc::vec![field.zero(); n];
    let mult = (0..n).map(|a| (0..n).map(|b| if a + b < n { e(a + b) } else { zero.clone() }).collect()).collect();
    let basis = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => alloc::format!("x^{i}"),
        })
        .collect();
    TwistedAlgebra::new(field.clone(), basis, e(0), mult, ParityGroup::trivial(), Vec::new())
}

/// The quaternions with `t: (1, i, j, k) ↦ (1, j, −i, −k)` generating
/// `C₄`; `t` odd gives `(C₄, q)`.
pub fn quaternions<F: Field>(field: F, t_odd: bool) -> TwistedAlgebra<F> {
    let z = field.zero();
    let p = field.one();
    let m = field.neg(&p);
    let v = |c: [&F::Elem; 4]| c.iter().map(|x| (*x).clone()).collect::<Vec<_>>();
    // rows: 1, i, j, k on the left; columns on the right
    let mult = alloc::vec![
        alloc::vec![v([&p, &z, &z, &z]), v([&z, &p, &z, &z]), v([&z, &z, &p, &z]), v([&z, &z, &z, &p])],
        alloc::vec![v([&z, &p, &z, &z]), v([&m, &z, &z, &z]), v([&z, &z, &z, &p]), v([&z, &z, &m, &z])],
        alloc::vec![v([&z, &z, &p, &z]), v([&z, &z, &z, &m]), v([&m, &z, &z, &z]), v([&z, &p, &z, &z])],
        alloc::vec![v([&z, &z, &z, &p]), v([&z, &z, &p, &z]), v([&z, &m, &z, &z]), v([&m, &z, &z, &z])],
    ];
    let t = alloc::vec![v([&p, &z, &z, &z]), v([&z, &z, &m, &z]), v([&z, &p, &z, &z]), v([&z, &z, &z, &m])];
    let group = if t_odd { ParityGroup::c4_q() } else { ParityGroup::cyclic(4, &[1, 1, 1, 1]).expect("C4") };
    let basis = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
    TwistedAlgebra::new(field, basis, v([&p, &z, &z, &z]), mult, group, alloc::vec![(1, t)]).expect("shapes")
}
