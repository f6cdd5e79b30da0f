//! Characters, symmetric bilinear forms and quadratic forms on a [`Group`].
//!
//! Characters are identified with residue vectors through the generator
//! `n ↦ e^{2πi n/q}` of each dual factor. All values are exact [`Phase`]s.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use crate::arith::{modp, mulmod};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::hom::HomMatrix;
use crate::phase::Phase;

/// A character `χ: G → U(1)`, stored as residues `χ_i ∈ [0, q_i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character {
    pub(crate) group: Group,
    pub(crate) residues: Vec<i64>,
}

impl Character {
    pub fn new(group: &Group, residues: &[i64]) -> Result<Character> {
        Ok(Character::from_element(group.element(residues)?))
    }

    pub fn trivial(group: &Group) -> Character {
        Character::from_element(group.zero())
    }

    pub fn from_element(e: GroupElement) -> Character {
        Character {
            group: e.group,
            residues: e.residues,
        }
    }

    /// The residue vector viewed as a group element (the dual identification).
    pub fn as_element(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            residues: self.residues.clone(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    /// `χ(g) = Σ χ_i g_i / q_i (mod 1)`.
    pub fn eval(&self, g: &GroupElement) -> Result<Phase> {
        self.group.ensure_same(g.group())?;
        Ok(self.eval_residues(g.residues()))
    }

    pub(crate) fn eval_residues(&self, g: &[i64]) -> Phase {
        eval_pairing(self.group.orders(), &self.residues, g)
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        Ok(Character::from_element(self.as_element().add(&other.as_element())?))
    }

    pub fn neg(&self) -> Character {
        Character::from_element(self.as_element().neg())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{:?}", self.residues)
    }
}

/// `Σ a_i b_i / q_i (mod 1)` computed over a common denominator.
pub(crate) fn eval_pairing(orders: &[i64], a: &[i64], b: &[i64]) -> Phase {
    let den = orders.iter().fold(1i64, |acc, q| acc.lcm(q));
    let num = orders
        .iter()
        .zip(a.iter().zip(b))
        .fold(0i64, |acc, (&q, (&x, &y))| {
            modp(acc + mulmod(mulmod(x, y, q), den / q, den), den)
        });
    Phase::new(num, den)
}

/// `χ(g)` as a free function.
pub fn char_eval(chi: &Character, g: &GroupElement) -> Result<Phase> {
    chi.eval(g)
}

fn gcd_table(g: &Group) -> Vec<Vec<i64>> {
    let q = g.orders();
    q.iter().map(|a| q.iter().map(|b| a.gcd(b)).collect()).collect()
}

/// A symmetric bicharacter `b(g, h) = Σ_{i,j} c_ij g_i h_j / gcd(q_i, q_j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricBilinearForm {
    group: Group,
    coeffs: Vec<Vec<i64>>,
}

impl SymmetricBilinearForm {
    pub fn new(group: &Group, coeffs: Vec<Vec<i64>>) -> Result<Self> {
        let d = group.rank();
        if coeffs.len() != d || coeffs.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidForm(format!("expected a {d}x{d} coefficient matrix")));
        }
        let gcds = gcd_table(group);
        let coeffs: Vec<Vec<i64>> = coeffs
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, &c)| modp(c, gcds[i][j])).collect())
            .collect();
        for i in 0..d {
            for j in 0..i {
                if coeffs[i][j] != coeffs[j][i] {
                    return Err(Error::InvalidForm(format!(
                        "coefficients not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SymmetricBilinearForm {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn zero(group: &Group) -> Self {
        let d = group.rank();
        SymmetricBilinearForm {
            group: group.clone(),
            coeffs: vec![vec![0; d]; d],
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeffs(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c == 0)
    }

    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Result<Phase> {
        self.group.ensure_same(g.group())?;
        self.group.ensure_same(h.group())?;
        Ok(self.eval_residues(g.residues(), h.residues()))
    }

    pub(crate) fn eval_residues(&self, g: &[i64], h: &[i64]) -> Phase {
        // b(g, h) = b̃(g)(h): evaluate through the induced character.
        let chi = self.induced().apply_residues(g);
        eval_pairing(self.group.orders(), chi.residues(), h)
    }

    /// The induced map `b̃: G → Ĝ`, `g ↦ b(g, ·)`, as a matrix on residues.
    pub fn induced(&self) -> HomMatrix {
        let q = self.group.orders();
        let gcds = gcd_table(&self.group);
        let d = q.len();
        let entries = (0..d)
            .map(|i| (0..d).map(|j| self.coeffs[i][j] * (q[i] / gcds[i][j])).collect())
            .collect();
        HomMatrix::from_valid(&self.group, &self.group, entries)
    }

    /// Inverse of [`SymmetricBilinearForm::induced`]; fails unless `m` is symmetric.
    pub fn from_induced(m: &HomMatrix) -> Result<Self> {
        let g = m.source().clone();
        if m.target() != &g {
            return Err(Error::InvalidForm("induced map must be an endomorphism".into()));
        }
        let q = g.orders();
        let gcds = gcd_table(&g);
        let coeffs = (0..q.len())
            .map(|i| {
                (0..q.len())
                    .map(|j| m.entry(i, j) / (q[i] / gcds[i][j]))
                    .collect()
            })
            .collect();
        SymmetricBilinearForm::new(&g, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
        SymmetricBilinearForm::new(&self.group, coeffs).expect("negation keeps symmetry")
    }
}

impl fmt::Debug for SymmetricBilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymBil[{}]{:?}", self.group, self.coeffs)
    }
}

/// A (not necessarily homogeneous) quadratic form
/// `ξ(g) = Σ a_i g_i²/(2q_i) + Σ_{i<j} c_ij g_i g_j / gcd(q_i,q_j) + χ(g)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    group: Group,
    diag: Vec<i64>,
    /// Full matrix; only the strict upper triangle is meaningful, the rest is zero.
    cross: Vec<Vec<i64>>,
    linear: Character,
}

impl QuadraticForm {
    /// Builds a form from diagonal coefficients, `(i, j, c)` cross triples with
    /// `i != j`, and linear residues.
    pub fn new(group: &Group, diag: &[i64], cross: &[(usize, usize, i64)], linear: &[i64]) -> Result<Self> {
        let d = group.rank();
        if diag.len() != d {
            return Err(Error::InvalidForm(format!("expected {d} diagonal coefficients")));
        }
        let mut c = vec![vec![0i64; d]; d];
        for &(i, j, v) in cross {
            if i >= d || j >= d || i == j {
                return Err(Error::InvalidForm(format!("bad cross index ({i}, {j})")));
            }
            let (lo, hi) = (i.min(j), i.max(j));
            c[lo][hi] += v;
        }
        Self::from_parts(group, diag.to_vec(), c, Character::new(group, linear)?)
    }

    fn from_parts(group: &Group, diag: Vec<i64>, cross: Vec<Vec<i64>>, linear: Character) -> Result<Self> {
        let q = group.orders();
        let gcds = gcd_table(group);
        let mut diag = diag;
        for (i, a) in diag.iter_mut().enumerate() {
            *a = modp(*a, 2 * q[i]);
            if (*a * q[i]) % 2 != 0 {
                return Err(Error::InvalidForm(format!(
                    "diagonal coefficient {a} on Z_{} is not well defined (a*q must be even)",
                    q[i]
                )));
            }
        }
        let d = q.len();
        let mut c = vec![vec![0i64; d]; d];
        for i in 0..d {
            for j in (i + 1)..d {
                c[i][j] = modp(cross[i][j], gcds[i][j]);
            }
        }
        group.ensure_same(linear.group())?;
        Ok(QuadraticForm {
            group: group.clone(),
            diag,
            cross: c,
            linear,
        })
    }

    pub fn zero(group: &Group) -> Self {
        let d = group.rank();
        QuadraticForm {
            group: group.clone(),
            diag: vec![0; d],
            cross: vec![vec![0; d]; d],
            linear: Character::trivial(group),
        }
    }

    /// A character viewed as a (linear) quadratic form.
    pub fn from_character(chi: &Character) -> Self {
        let mut xi = QuadraticForm::zero(chi.group());
        xi.linear = chi.clone();
        xi
    }

    /// The nondegenerate diagonal form with `b(e_i, e_i) = 1/q_i`.
    pub fn standard(group: &Group) -> Self {
        let diag: Vec<i64> = group
            .orders()
            .iter()
            .map(|&q| if q % 2 == 0 { 1 } else { q + 1 })
            .collect();
        QuadraticForm::new(group, &diag, &[], &vec![0; group.rank()]).expect("well-defined diagonal")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn diag(&self) -> &[i64] {
        &self.diag
    }

    /// Nonzero cross coefficients as `(i, j, c)` with `i < j`.
    pub fn cross_terms(&self) -> Vec<(usize, usize, i64)> {
        let d = self.group.rank();
        let mut out = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                if self.cross[i][j] != 0 {
                    out.push((i, j, self.cross[i][j]));
                }
            }
        }
        out
    }

    pub fn linear(&self) -> &Character {
        &self.linear
    }

    pub fn eval(&self, g: &GroupElement) -> Result<Phase> {
        self.group.ensure_same(g.group())?;
        Ok(self.eval_residues(g.residues()))
    }

    pub(crate) fn eval_residues(&self, g: &[i64]) -> Phase {
        let q = self.group.orders();
        let den = 2 * self.group.exponent();
        let mut num: i64 = 0;
        for i in 0..q.len() {
            // a_i g_i^2 / (2 q_i)
            let t = mulmod(mulmod(self.diag[i], mulmod(g[i], g[i], den), den), den / (2 * q[i]), den);
            num = modp(num + t, den);
            for j in (i + 1)..q.len() {
                let c = self.cross[i][j];
                if c != 0 {
                    let gij = q[i].gcd(&q[j]);
                    let t = mulmod(mulmod(c, mulmod(g[i], g[j], den), den), den / gij, den);
                    num = modp(num + t, den);
                }
            }
        }
        Phase::new(num, den) + self.linear.eval_residues(g)
    }

    /// Value table indexed like [`Group::elements`].
    pub fn table(&self) -> PhaseTable {
        PhaseTable {
            group: self.group.clone(),
            values: (0..self.group.size())
                .map(|i| self.eval_residues(&self.group.residues_of(i)))
                .collect(),
        }
    }

    /// The associated bicharacter `b_ξ(g,h) = ξ(g+h) − ξ(g) − ξ(h)`.
    pub fn polarize(&self) -> SymmetricBilinearForm {
        let q = self.group.orders();
        let d = q.len();
        let mut coeffs = vec![vec![0i64; d]; d];
        for i in 0..d {
            coeffs[i][i] = self.diag[i];
            for j in (i + 1)..d {
                coeffs[i][j] = self.cross[i][j];
                coeffs[j][i] = self.cross[i][j];
            }
        }
        SymmetricBilinearForm::new(&self.group, coeffs).expect("polarization is symmetric")
    }

    /// Canonical lift of a bicharacter with zero linear part.
    pub fn lift_bilinear(b: &SymmetricBilinearForm) -> QuadraticForm {
        let g = b.group();
        let q = g.orders();
        let d = q.len();
        let c = b.coeffs();
        let diag = (0..d)
            .map(|i| {
                let a = c[i][i];
                if (a * q[i]) % 2 != 0 {
                    a + q[i]
                } else {
                    a
                }
            })
            .collect();
        QuadraticForm::from_parts(g, diag, c.to_vec(), Character::trivial(g))
            .expect("lift representative is well defined")
    }

    /// True iff `g ↦ b_ξ(g, ·)` is an isomorphism `G → Ĝ`.
    pub fn is_nondegenerate(&self) -> bool {
        self.polarize().induced().is_automorphism()
    }

    /// The map `i_ξ: Ĝ → G` sending `χ` to the unique `t` with
    /// `ξ(g) + ξ(t) − ξ(g + t) = χ(g)` for all `g`, i.e. `−b_ξ(t, ·) = χ`.
    pub fn i_xi_map(&self) -> Result<HomMatrix> {
        let induced = self.polarize().induced();
        let inv = induced.invert().map_err(|_| Error::DegenerateForm)?;
        Ok(inv.neg())
    }

    /// `i_ξ(χ)`.
    pub fn i_xi(&self, chi: &Character) -> Result<GroupElement> {
        self.group.ensure_same(chi.group())?;
        self.i_xi_map()?.apply(&chi.as_element())
    }

    /// Inverse direction: the character `χ = −b_ξ(t, ·)` with `i_ξ(χ) = t`.
    pub fn i_xi_inverse(&self, t: &GroupElement) -> Result<Character> {
        self.group.ensure_same(t.group())?;
        let chi = self.polarize().induced().apply(t)?;
        Ok(Character::from_element(chi.neg()))
    }

    pub fn neg(&self) -> QuadraticForm {
        let diag = self.diag.iter().map(|a| -a).collect();
        let cross = self.cross.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
        QuadraticForm::from_parts(&self.group, diag, cross, self.linear.neg()).expect("negation is well defined")
    }

    pub fn add(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        self.group.ensure_same(&other.group)?;
        let diag = self.diag.iter().zip(&other.diag).map(|(a, b)| a + b).collect();
        let cross = self
            .cross
            .iter()
            .zip(&other.cross)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        QuadraticForm::from_parts(&self.group, diag, cross, self.linear.add(&other.linear)?)
    }

    /// `ξ ⊕ η` on `G × H`: `(g, h) ↦ ξ(g) + η(h)`.
    pub fn direct_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        let group = self.group.product(&other.group);
        let (d1, d) = (self.group.rank(), group.rank());
        let mut diag = self.diag.clone();
        diag.extend_from_slice(&other.diag);
        let mut cross = vec![vec![0; d]; d];
        for i in 0..d1 {
            cross[i][..d1].copy_from_slice(&self.cross[i]);
        }
        for (i, row) in other.cross.iter().enumerate() {
            cross[d1 + i][d1..].copy_from_slice(row);
        }
        let mut lin = self.linear.residues.clone();
        lin.extend_from_slice(&other.linear.residues);
        let linear = Character::new(&group, &lin).expect("same shape");
        QuadraticForm::from_parts(&group, diag, cross, linear).expect("direct sum is well defined")
    }

    /// Reconstructs a quadratic form from its values, assuming `f` is quadratic.
    ///
    /// Only generator and pairwise values are consulted; use
    /// [`QuadraticForm::from_table`] to validate a full table.
    pub fn from_values(group: &Group, f: impl Fn(&[i64]) -> Phase) -> Result<QuadraticForm> {
        let q = group.orders();
        let d = q.len();
        let zero = vec![0i64; d];
        if !f(&zero).is_zero() {
            return Err(Error::InvalidForm("a quadratic form vanishes at 0".into()));
        }
        let unit = |i: usize, k: i64| {
            let mut e = zero.clone();
            e[i] = modp(k, q[i]);
            e
        };
        let mut coeffs = vec![vec![0i64; d]; d];
        for i in 0..d {
            for j in i..d {
                let gij = q[i].gcd(&q[j]);
                let mut eij = unit(i, 1);
                eij[j] = modp(eij[j] + 1, q[j]);
                let b = f(&eij) - f(&unit(i, 1)) - f(&unit(j, 1));
                let c = b.times_integral(gij).ok_or_else(|| {
                    Error::InvalidForm(format!("polarization at ({i}, {j}) has order not dividing {gij}"))
                })?;
                coeffs[i][j] = c;
                coeffs[j][i] = c;
            }
        }
        let bil = SymmetricBilinearForm::new(group, coeffs)?;
        let base = QuadraticForm::lift_bilinear(&bil);
        let lin = (0..d)
            .map(|i| {
                let e = unit(i, 1);
                (f(&e) - base.eval_residues(&e)).times_integral(q[i]).ok_or_else(|| {
                    Error::InvalidForm(format!("linear part on factor {i} is not a character"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let lin = Character::new(group, &lin)?;
        base.add(&QuadraticForm::from_character(&lin))
    }

    /// Converts a complete quadratic phase table into coordinates.
    pub fn from_table(table: &PhaseTable) -> Result<QuadraticForm> {
        if !is_quadratic_table(table)? {
            return Err(Error::InvalidForm("phase table is not a quadratic form".into()));
        }
        let g = table.group();
        let xi = QuadraticForm::from_values(g, |r| table.values[g.index_of(r)])?;
        debug_assert_eq!(xi.table(), *table);
        Ok(xi)
    }

    /// `ξ ∘ φ` for a homomorphism `φ: H → G`.
    pub fn pullback(&self, phi: &HomMatrix) -> Result<QuadraticForm> {
        self.group.ensure_same(phi.target())?;
        QuadraticForm::from_values(phi.source(), |r| self.eval_residues(phi.apply_residues(r).residues()))
    }

    /// Equality as functions on the group (coordinates are not unique).
    pub fn same_values(&self, other: &QuadraticForm) -> bool {
        self.group == other.group && self.table() == other.table()
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Quad[{}]{{diag: {:?}, cross: {:?}, linear: {:?}}}",
            self.group,
            self.diag,
            self.cross_terms(),
            self.linear.residues
        )
    }
}

/// `ξ(g)` as a free function.
pub fn quad_eval(xi: &QuadraticForm, g: &GroupElement) -> Result<Phase> {
    xi.eval(g)
}

/// A complete table of phases on a group, indexed like [`Group::elements`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhaseTable {
    group: Group,
    values: Vec<Phase>,
}

impl PhaseTable {
    pub fn new(group: &Group, values: Vec<Phase>) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::IncompleteTable(format!(
                "{} values for a group of order {}",
                values.len(),
                group.size()
            )));
        }
        Ok(PhaseTable {
            group: group.clone(),
            values,
        })
    }

    /// Builds a table from a map; every element must be present.
    pub fn from_map(group: &Group, map: &HashMap<GroupElement, Phase>) -> Result<Self> {
        let values = group
            .elements()
            .map(|g| {
                map.get(&g)
                    .copied()
                    .ok_or_else(|| Error::IncompleteTable(format!("missing value at {g:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PhaseTable::new(group, values)
    }

    pub fn from_fn(group: &Group, f: impl Fn(&[i64]) -> Phase) -> Self {
        PhaseTable {
            group: group.clone(),
            values: (0..group.size()).map(|i| f(&group.residues_of(i))).collect(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    pub fn get(&self, g: &[i64]) -> Phase {
        self.values[self.group.index_of(g)]
    }

    /// The table of `g ↦ b(k, g) = ξ(k+g) − ξ(k) − ξ(g)`.
    pub fn difference(&self, k: &[i64]) -> PhaseTable {
        let q = self.group.orders();
        PhaseTable::from_fn(&self.group, |g| {
            let kg: Vec<i64> = k.iter().zip(g).zip(q).map(|((a, b), m)| modp(a + b, *m)).collect();
            self.get(&kg) - self.get(k) - self.get(g)
        })
    }

    pub fn neg(&self) -> PhaseTable {
        PhaseTable {
            group: self.group.clone(),
            values: self.values.iter().map(|&v| -v).collect(),
        }
    }
}

/// True iff the difference table `ξ(g+h) − ξ(g) − ξ(h)` is additive in each
/// slot, i.e. the table is a quadratic form. Exhaustive.
pub fn is_quadratic_table(table: &PhaseTable) -> Result<bool> {
    let g = table.group();
    if table.values.len() != g.size() {
        return Err(Error::IncompleteTable("table does not cover the group".into()));
    }
    let n = g.size();
    let q = g.orders();
    let add = |a: usize, b: usize| -> usize {
        let (ra, rb) = (g.residues_of(a), g.residues_of(b));
        let s: Vec<i64> = ra.iter().zip(&rb).zip(q).map(|((x, y), m)| (x + y) % m).collect();
        g.index_of(&s)
    };
    let sum: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| add(a, b)).collect()).collect();
    let v = &table.values;
    let b = |x: usize, y: usize| v[sum[x][y]] - v[x] - v[y];
    for x1 in 0..n {
        for x2 in 0..n {
            for y in 0..n {
                if b(sum[x1][x2], y) != b(x1, y) + b(x2, y) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(o: &[i64]) -> Group {
        Group::new(o).unwrap()
    }

    #[test]
    fn character_examples() {
        let z4 = grp(&[4]);
        let chi = Character::new(&z4, &[1]).unwrap();
        assert_eq!(chi.eval(&z4.element(&[2]).unwrap()).unwrap(), Phase::new(1, 2));
        let g = grp(&[4, 2]);
        let chi = Character::new(&g, &[1, 1]).unwrap();
        assert_eq!(chi.eval(&g.element(&[1, 1]).unwrap()).unwrap(), Phase::new(3, 4));
        for x in g.elements() {
            assert!(Character::trivial(&g).eval(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn quad_eval_examples() {
        let z2 = grp(&[2]);
        let s = QuadraticForm::new(&z2, &[1], &[], &[0]).unwrap();
        assert_eq!(s.eval(&z2.element(&[1]).unwrap()).unwrap(), Phase::new(1, 4));
        let z3 = grp(&[3]);
        let xi = QuadraticForm::new(&z3, &[2], &[], &[0]).unwrap();
        assert_eq!(xi.eval(&z3.element(&[1]).unwrap()).unwrap(), Phase::new(1, 3));
        assert_eq!(xi.eval(&z3.element(&[2]).unwrap()).unwrap(), Phase::new(1, 3));
        for xi in [s, xi] {
            assert!(xi.eval(&xi.group().zero()).unwrap().is_zero());
        }
    }

    #[test]
    fn well_definedness_parity() {
        assert!(QuadraticForm::new(&grp(&[3]), &[1], &[], &[0]).is_err());
        assert!(QuadraticForm::new(&grp(&[3]), &[4], &[], &[0]).is_ok());
    }

    #[test]
    fn polarize_examples() {
        let z2 = grp(&[2]);
        let one = z2.element(&[1]).unwrap();
        let b = QuadraticForm::new(&z2, &[1], &[], &[0]).unwrap().polarize();
        assert_eq!(b.eval(&one, &one).unwrap(), Phase::new(1, 2));
        let lin = QuadraticForm::new(&grp(&[4, 2]), &[0, 0], &[], &[3, 1]).unwrap();
        assert!(lin.polarize().is_trivial());
        let z4 = grp(&[4]);
        let b = QuadraticForm::new(&z4, &[2], &[], &[0]).unwrap().polarize();
        let one = z4.element(&[1]).unwrap();
        assert_eq!(b.eval(&one, &one).unwrap(), Phase::new(1, 2));
    }

    #[test]
    fn lift_examples() {
        let z3 = grp(&[3]);
        let b = SymmetricBilinearForm::new(&z3, vec![vec![1]]).unwrap();
        let xi = QuadraticForm::lift_bilinear(&b);
        // a ≡ 1 (mod 3) with 3a even forces the representative 4.
        assert_eq!(xi.diag(), &[4]);
        assert_eq!(xi.polarize(), b);

        let g = grp(&[4, 2]);
        let b = SymmetricBilinearForm::new(&g, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let xi = QuadraticForm::lift_bilinear(&b);
        assert_eq!(xi.diag(), &[0, 0]);
        assert_eq!(xi.polarize(), b);
        for x in g.elements() {
            let r = x.residues();
            assert_eq!(xi.eval(&x).unwrap(), Phase::new(r[0] * r[1], 2));
        }
        assert_eq!(QuadraticForm::lift_bilinear(&SymmetricBilinearForm::zero(&g)), QuadraticForm::zero(&g));
    }

    #[test]
    fn quadratic_table_detection() {
        let z2 = grp(&[2]);
        let t = PhaseTable::new(&z2, vec![Phase::ZERO, Phase::new(1, 8)]).unwrap();
        assert!(!is_quadratic_table(&t).unwrap());
        let z3 = grp(&[3]);
        let t = PhaseTable::new(&z3, vec![Phase::ZERO, Phase::new(1, 9), Phase::new(8, 9)]).unwrap();
        assert!(!is_quadratic_table(&t).unwrap());
        let xi = QuadraticForm::new(&grp(&[4, 2]), &[3, 1], &[(0, 1, 1)], &[1, 0]).unwrap();
        assert!(is_quadratic_table(&xi.table()).unwrap());
        assert!(PhaseTable::new(&z3, vec![Phase::ZERO]).is_err());
        let mut map = HashMap::new();
        map.insert(z3.zero(), Phase::ZERO);
        assert!(matches!(PhaseTable::from_map(&z3, &map), Err(Error::IncompleteTable(_))));
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(QuadraticForm::new(&grp(&[2]), &[1], &[], &[0]).unwrap().is_nondegenerate());
        assert!(!QuadraticForm::zero(&grp(&[4, 2])).is_nondegenerate());
        assert!(QuadraticForm::new(&grp(&[4]), &[1], &[], &[0]).unwrap().is_nondegenerate());
        assert!(!QuadraticForm::new(&grp(&[4]), &[2], &[], &[0]).unwrap().is_nondegenerate());
    }

    #[test]
    fn i_xi_examples() {
        let z2 = grp(&[2]);
        let xi = QuadraticForm::new(&z2, &[1], &[], &[0]).unwrap();
        let chi = Character::new(&z2, &[1]).unwrap();
        assert_eq!(xi.i_xi(&chi).unwrap().residues(), &[1]);
        assert!(xi.i_xi(&Character::trivial(&z2)).unwrap().is_zero());

        let z3 = grp(&[3]);
        let xi = QuadraticForm::new(&z3, &[2], &[], &[0]).unwrap();
        let chi = Character::new(&z3, &[1]).unwrap();
        let t = xi.i_xi(&chi).unwrap();
        // Brute force: the unique t with ξ(g) + ξ(t) − ξ(g+t) = χ(g) for all g.
        let hits: Vec<_> = z3
            .elements()
            .filter(|t| {
                z3.elements().all(|g| {
                    xi.eval(&g).unwrap() + xi.eval(t).unwrap() - xi.eval(&g.add(t).unwrap()).unwrap()
                        == chi.eval(&g).unwrap()
                })
            })
            .collect();
        assert_eq!(hits, vec![t.clone()]);
        assert_eq!(xi.i_xi_inverse(&t).unwrap(), chi);
        assert_eq!(
            QuadraticForm::zero(&z3).i_xi(&chi),
            Err(Error::DegenerateForm)
        );
    }

    #[test]
    fn from_table_recovers_values() {
        let g = grp(&[4, 2, 3]);
        let xi = QuadraticForm::new(&g, &[3, 2, 4], &[(0, 1, 1), (0, 2, 0), (1, 2, 0)], &[1, 1, 2]).unwrap();
        let back = QuadraticForm::from_table(&xi.table()).unwrap();
        assert!(back.same_values(&xi));
    }
}
