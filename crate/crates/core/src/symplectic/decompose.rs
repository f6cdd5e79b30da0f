//! Reduction of a symplectic map to the identity by `A_τ`, `S_ξ` and `F_i`
//! moves, one cyclic factor at a time.

use crate::arith::gcd_shift;
use crate::canonical::canonicalize;
use crate::clifford::{CliffordTableau, Gate, GateSequence};
use crate::elim::Eliminator;
use crate::error::{Error, Result};
use crate::forms::{QuadraticForm, SymmetricBilinearForm};
use crate::group::{Group, GroupElement};
use crate::hom::{HomMatrix, Isomorphism};
use crate::pauli::{PauliOperator, PauliVector};

use super::{image_in_sp, preserves_beta, SymplecticMap};

/// `decompose` emits at most `GATE_BOUND_CONSTANT · rank²` gates.
pub const GATE_BOUND_CONSTANT: usize = 24;

/// An automorphism `τ` of a canonical group with `τ(v) = e_0`.
pub fn extend_to_automorphism(v: &GroupElement) -> Result<HomMatrix> {
    let g = v.group();
    if !g.is_canonical() {
        return Err(Error::NotCanonical(g.to_string()));
    }
    let rows: Vec<usize> = (0..g.rank()).collect();
    let tau = unit_column_map(g, v.residues(), 0, &rows).ok_or_else(|| Error::NotExtendable(v.residues().to_vec()))?;
    if !tau.is_automorphism() || tau.apply(v)? != g.generator(0) {
        return Err(Error::NotExtendable(v.residues().to_vec()));
    }
    Ok(tau)
}

/// The product of the elimination moves sending `col` to `e_pivot`.
fn unit_column_map(g: &Group, col: &[i64], pivot: usize, rows: &[usize]) -> Option<HomMatrix> {
    let mut el = Eliminator::new(g.orders(), vec![col.to_vec()]);
    if !el.unit_column(0, pivot, rows) {
        return None;
    }
    Some(
        el.ops
            .iter()
            .fold(HomMatrix::identity(g), |acc, op| op.to_matrix(g).compose(&acc).expect("same group")),
    )
}

struct Reducer {
    group: Group,
    d: usize,
    sigma: HomMatrix,
    /// Gates applied on the left of `sigma`, in order.
    moves: Vec<Gate>,
}

fn fail(step: &str, detail: impl std::fmt::Debug) -> Error {
    Error::InternalReductionFailure(format!("{step}: {detail:?}"))
}

impl Reducer {
    fn entry(&self, r: usize, c: usize) -> i64 {
        self.sigma.entry(r, c)
    }

    fn x_part(&self, col: usize) -> Vec<i64> {
        (0..self.d).map(|i| self.entry(i, col)).collect()
    }

    fn z_part(&self, col: usize) -> Vec<i64> {
        (0..self.d).map(|i| self.entry(self.d + i, col)).collect()
    }

    fn push(&mut self, gate: Gate) -> Result<()> {
        let img = image_in_sp(&gate, &self.group)?;
        self.sigma = img.matrix().compose(&self.sigma)?;
        if !preserves_beta(&self.group, &self.sigma) {
            return Err(fail("symplectic invariant lost after move", &gate));
        }
        self.moves.push(gate);
        Ok(())
    }

    /// `[[I, 0], [B̃, I]]`.
    fn lower_shear(&mut self, b: &SymmetricBilinearForm) -> Result<()> {
        if b.is_trivial() {
            return Ok(());
        }
        self.push(Gate::Quadratic(QuadraticForm::lift_bilinear(b)))
    }

    /// `[[I, −B̃], [0, I]] = F · L(B) · F^{-1}` with `F = F_id`.
    fn upper_shear(&mut self, b: &SymmetricBilinearForm) -> Result<()> {
        if b.is_trivial() {
            return Ok(());
        }
        let id = HomMatrix::identity(&self.group);
        for g in Gate::Fourier(id.clone()).inverse_generators(&self.group)? {
            self.push(g)?;
        }
        self.lower_shear(b)?;
        self.push(Gate::Fourier(id))
    }

    fn automorphism(&mut self, tau: HomMatrix) -> Result<()> {
        if tau.is_identity() {
            return Ok(());
        }
        self.push(Gate::Automorphism(tau))
    }

    /// Symmetric form whose induced matrix has column (and row) `c` equal to
    /// `col` on the factors `c..d`; requires `q_i | q_c` there.
    fn column_form(&self, c: usize, col: &[i64]) -> Result<SymmetricBilinearForm> {
        let mut coeffs = vec![vec![0i64; self.d]; self.d];
        for i in c..self.d {
            coeffs[i][c] = col[i];
            coeffs[c][i] = col[i];
        }
        SymmetricBilinearForm::new(&self.group, coeffs)
    }

    fn diagonal_form(&self, c: usize, diag: &[i64]) -> Result<SymmetricBilinearForm> {
        let mut coeffs = vec![vec![0i64; self.d]; self.d];
        for i in c..self.d {
            coeffs[i][i] = diag[i];
        }
        SymmetricBilinearForm::new(&self.group, coeffs)
    }

    /// Exchanges the `X` and `Z` parts on factors `c..d`: `(x, z) ↦ (z, −x)`.
    fn swap_active(&mut self, c: usize) -> Result<()> {
        if c == 0 {
            return self.push(Gate::Fourier(HomMatrix::identity(&self.group)));
        }
        let minus = self.diagonal_form(c, &vec![-1; self.d])?;
        self.upper_shear(&minus)?;
        self.lower_shear(&minus)?;
        self.upper_shear(&minus)
    }

    fn extendable(&self, c: usize, v: &[i64]) -> bool {
        let rows: Vec<usize> = (c..self.d).collect();
        unit_column_map(&self.group, v, c, &rows).is_some()
    }

    fn reduce_factor(&mut self, c: usize) -> Result<()> {
        let d = self.d;
        let q = self.group.orders().to_vec();
        let rows: Vec<usize> = (c..d).collect();

        // Make the X part of column c generate a Z_{q_c} summand: shear so each
        // Z entry carries the joint gcd, then move the Z part over.
        if !self.extendable(c, &self.x_part(c)) {
            let (r, rp) = (self.x_part(c), self.z_part(c));
            let k: Vec<i64> = (0..d).map(|i| if i < c { 0 } else { gcd_shift(rp[i], r[i], q[i]) }).collect();
            let b = self.diagonal_form(c, &k)?;
            self.lower_shear(&b)?;
            self.swap_active(c)?;
            if !self.extendable(c, &self.x_part(c)) {
                return Err(fail("pivot column has no unimodular entry", self.x_part(c)));
            }
        }

        let tau = unit_column_map(&self.group, &self.x_part(c), c, &rows).expect("checked above");
        self.automorphism(tau)?;
        if self.x_part(c) != self.group.generator(c).residues() {
            return Err(fail("X part of pivot column is not a unit vector", self.x_part(c)));
        }

        let z = self.z_part(c);
        let neg: Vec<i64> = z.iter().map(|v| -v).collect();
        let b = self.column_form(c, &neg)?;
        self.lower_shear(&b)?;
        if self.z_part(c).iter().any(|&v| v != 0) {
            return Err(fail("Z part of pivot column not cleared", self.z_part(c)));
        }

        // Symplecticity forces the pairing entry of the partner column.
        if self.entry(d + c, d + c) != 1 {
            return Err(fail("partner column pairing is not 1", self.entry(d + c, d + c)));
        }

        // μ(y)_k = y_k − s'_k y_c; apply A_τ with dual(τ^{-1}) = μ.
        let sp = self.z_part(d + c);
        let mut mu = vec![vec![0i64; d]; d];
        for (k, row) in mu.iter_mut().enumerate() {
            row[k] = 1;
            if k != c {
                row[c] = -sp[k];
            }
        }
        let mu = HomMatrix::endo(&self.group, mu)?;
        self.automorphism(mu.dual().invert()?)?;
        if self.z_part(d + c) != self.group.generator(c).residues() {
            return Err(fail("Z part of partner column is not a unit vector", self.z_part(d + c)));
        }

        let s = self.x_part(d + c);
        let b = self.column_form(c, &s)?;
        self.upper_shear(&b)?;
        if self.x_part(d + c).iter().any(|&v| v != 0) {
            return Err(fail("X part of partner column not cleared", self.x_part(d + c)));
        }

        for (line, pos) in [(c, c), (d + c, d + c)] {
            for k in 0..2 * d {
                let want = i64::from(k == pos);
                if self.entry(line, k) != want || self.entry(k, line) != want {
                    return Err(fail("pivot row/column not split off", (line, k)));
                }
            }
        }
        Ok(())
    }
}

fn decompose_canonical(sigma: &SymplecticMap) -> Result<GateSequence> {
    let g = sigma.group().clone();
    let mut red = Reducer {
        d: g.rank(),
        group: g.clone(),
        sigma: sigma.matrix().clone(),
        moves: Vec::new(),
    };
    for c in 0..red.d {
        red.reduce_factor(c)?;
    }
    if !red.sigma.is_identity() {
        return Err(fail("reduction did not reach the identity", red.sigma.entries()));
    }
    // Γ_k ⋯ Γ_1 σ = I, so σ is realized by the inverse moves in reverse.
    let mut out = Vec::new();
    for m in red.moves.iter().rev() {
        out.extend(m.inverse_generators(&g)?);
    }
    GateSequence::new(&g, out)
}

/// Rewrites a gate on the canonical group as the conjugate gate on the original.
fn pull_gate(gate: &Gate, iso: &Isomorphism, on: &Group) -> Result<Gate> {
    let (fwd, bwd) = (iso.forward(), iso.backward());
    Ok(match gate {
        Gate::Automorphism(t) => Gate::Automorphism(bwd.compose(t)?.compose(fwd)?),
        Gate::Quadratic(xi) => Gate::Quadratic(xi.pullback(fwd)?),
        Gate::Fourier(i) => Gate::Fourier(bwd.compose(i)?.compose(&bwd.dual())?),
        Gate::FourierDagger(i) => Gate::FourierDagger(bwd.compose(i)?.compose(&bwd.dual())?),
        Gate::Pauli(p) => {
            let v = bwd.direct_sum(&fwd.dual()).apply_residues(&p.vector().residues());
            Gate::Pauli(PauliOperator::from_vector(
                p.phase(),
                PauliVector::from_residues(on, v.residues())?,
            ))
        }
        Gate::Cx => return Err(Error::Circuit("cx is not a single-group generator".into())),
    })
}

/// A sequence of `A_τ`, `S_ξ`, `F_i` gates whose symplectic image is `σ`.
pub fn decompose(sigma: &SymplecticMap) -> Result<GateSequence> {
    let g = sigma.group().clone();
    if !super::is_symplectic(&g, sigma.matrix()) {
        return Err(Error::NotSymplectic("input fails the commutation check".into()));
    }
    if g.is_canonical() {
        return decompose_canonical(sigma);
    }
    let (canon, iso) = canonicalize(&g);
    let lift = iso.forward().direct_sum(&iso.backward().dual());
    let drop = iso.backward().direct_sum(&iso.forward().dual());
    let conj = lift.compose(sigma.matrix())?.compose(&drop)?;
    let seq = decompose_canonical(&SymplecticMap::new(&canon, conj)?)?;
    let gates = seq
        .gates()
        .iter()
        .map(|gate| pull_gate(gate, &iso, &g))
        .collect::<Result<Vec<_>>>()?;
    GateSequence::new(&g, gates)
}

/// A generator sequence, ending in a Pauli gate, whose tableau is `t`.
pub fn decompose_clifford(t: &CliffordTableau) -> Result<GateSequence> {
    let mut seq = decompose(&t.symplectic())?;
    let residual = t.compose(&seq.tableau()?.inverse())?;
    let w = residual
        .as_pauli()
        .ok_or_else(|| fail("residual after matching the symplectic part is not a Pauli", &residual))?;
    seq.push(Gate::Pauli(w))?;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::image_of_sequence;

    #[test]
    fn extend_examples() {
        let g = Group::new(&[4, 2]).unwrap();
        assert!(extend_to_automorphism(&g.generator(0)).unwrap().is_identity());
        let v = g.element(&[1, 1]).unwrap();
        let tau = extend_to_automorphism(&v).unwrap();
        assert_eq!(tau.apply(&v).unwrap(), g.generator(0));
        let w = g.element(&[2, 0]).unwrap();
        assert_eq!(extend_to_automorphism(&w), Err(Error::NotExtendable(vec![2, 0])));
    }

    #[test]
    fn identity_gives_empty_sequence() {
        let g = Group::new(&[4, 2]).unwrap();
        assert!(decompose(&SymplecticMap::identity(&g)).unwrap().is_empty());
    }

    #[test]
    fn qubit_swap() {
        let z2 = Group::new(&[2]).unwrap();
        let swap = SymplecticMap::from_entries(&z2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let seq = decompose(&swap).unwrap();
        assert_eq!(image_of_sequence(&seq).unwrap(), swap);
    }

    #[test]
    fn non_canonical_group() {
        let g = Group::new(&[2, 4]).unwrap();
        let seq = GateSequence::new(
            &g,
            vec![
                Gate::Quadratic(QuadraticForm::new(&g, &[1, 3], &[(0, 1, 1)], &[0, 0]).unwrap()),
                Gate::Fourier(HomMatrix::identity(&g)),
            ],
        )
        .unwrap();
        let sigma = image_of_sequence(&seq).unwrap();
        let out = decompose(&sigma).unwrap();
        assert_eq!(image_of_sequence(&out).unwrap(), sigma);
        let t = seq.tableau().unwrap();
        assert_eq!(decompose_clifford(&t).unwrap().tableau().unwrap(), t);
    }
}
