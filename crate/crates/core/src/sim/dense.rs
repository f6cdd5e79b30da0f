//! Brute-force state vectors and matrices over `C[G^n]`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::clifford::Gate;
use crate::error::{Error, Result};
use crate::forms::eval_pairing;
use crate::group::Group;
use crate::pauli::{check_slots, PauliOperator};
use crate::phase::Phase;

use super::scalar::{cis, Real};

/// Default cap on the dense dimension `|G|^n`.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// A square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T: Real> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.data[r * self.dim + c] = v;
    }

    fn add_at(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.data[r * self.dim + c] = self.data[r * self.dim + c] + v;
    }

    pub fn mul(&self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseMatrix<T> {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// `self ⊗ other`, with `self` on the more significant index.
    pub fn kron(&self, other: &DenseMatrix<T>) -> DenseMatrix<T> {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, v * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex<T>) -> DenseMatrix<T> {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).fold(Complex::zero(), |acc, j| acc + self.data[i * n + j] * v[j]))
            .collect()
    }

    /// Largest entrywise deviation.
    pub fn max_diff(&self, other: &DenseMatrix<T>) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    pub fn approx_eq(&self, other: &DenseMatrix<T>, tol: T) -> bool {
        self.dim == other.dim && self.max_diff(other) <= tol
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.adjoint().mul(self).approx_eq(&Self::identity(self.dim), tol)
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn as_scalar(&self, tol: T) -> Option<Complex<T>> {
        let c = self.get(0, 0);
        self.approx_eq(&Self::identity(self.dim).scale(c), tol).then_some(c)
    }

    /// `Some(c)` with `self = c·other`, `|c| = 1`, if one exists.
    pub fn phase_relative_to(&self, other: &DenseMatrix<T>, tol: T) -> Option<Complex<T>> {
        let (mut best, mut at) = (T::zero(), 0);
        for (k, v) in other.data.iter().enumerate() {
            if v.norm() > best {
                best = v.norm();
                at = k;
            }
        }
        if best <= tol {
            return None;
        }
        let c = self.data[at] / other.data[at];
        self.approx_eq(&other.scale(c), tol).then_some(c)
    }
}

/// `ω·X_g·Z_χ` as a matrix on `C[G]`.
pub fn pauli_matrix<T: Real>(p: &PauliOperator) -> DenseMatrix<T> {
    let g = p.group();
    let mut m = DenseMatrix::zeros(g.size());
    for h in 0..g.size() {
        let (to, ph) = pauli_step(g, p, h);
        m.set(to, h, cis(ph));
    }
    m
}

fn pauli_step(g: &Group, p: &PauliOperator, h: usize) -> (usize, Phase) {
    let r = g.residues_of(h);
    let v = p.vector();
    let q = g.orders();
    let shifted: Vec<i64> = r.iter().zip(v.x()).zip(q).map(|((a, b), m)| (a + b) % m).collect();
    (g.index_of(&shifted), p.phase() + eval_pairing(q, v.z(), &r))
}

/// The unitary of a gate on the whole of `on`.
pub fn gate_matrix<T: Real>(gate: &Gate, on: &Group, cap: usize) -> Result<DenseMatrix<T>> {
    gate.check(on)?;
    let n = on.size();
    if n > cap {
        return Err(Error::DimensionCap { dim: n, cap });
    }
    let mut m = DenseMatrix::zeros(n);
    match gate.resolve(on)? {
        Gate::Automorphism(t) => {
            for g in 0..n {
                let img = t.apply_residues(&on.residues_of(g));
                m.set(on.index_of(img.residues()), g, Complex::one());
            }
        }
        Gate::Quadratic(xi) => {
            for g in 0..n {
                m.set(g, g, cis(xi.eval_residues(&on.residues_of(g))));
            }
        }
        Gate::Fourier(i) => fill_fourier(&mut m, &i, on),
        Gate::FourierDagger(i) => {
            fill_fourier(&mut m, &i, on);
            m = m.adjoint();
        }
        Gate::Pauli(p) => m = pauli_matrix(&p),
        Gate::Cx => unreachable!("resolved above"),
    }
    Ok(m)
}

fn fill_fourier<T: Real>(m: &mut DenseMatrix<T>, i: &crate::hom::HomMatrix, on: &Group) {
    let n = on.size();
    let norm = T::lit(1.0 / (n as f64).sqrt());
    let q = on.orders();
    for chi in 0..n {
        let chi_r = on.residues_of(chi);
        let row = on.index_of(i.apply_residues(&chi_r).residues());
        for g in 0..n {
            let ph = -eval_pairing(q, &chi_r, &on.residues_of(g));
            m.add_at(row, g, cis::<T>(ph) * norm);
        }
    }
}

/// A gate placed on `slots` of `base^n`, as a full `|G|^n` matrix.
pub fn dense_gate<T: Real>(gate: &Gate, slots: &[usize], base: &Group, n: usize, cap: usize) -> Result<DenseMatrix<T>> {
    let dim = checked_dim(base, n, cap)?;
    let local = gate_matrix::<T>(gate, &base.power(slots.len()), cap)?;
    let mut out = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let mut s = DenseState::<T>::basis_index(base, n, col, cap)?;
        s.apply_local(&local, slots)?;
        for (row, v) in s.amps.iter().enumerate() {
            out.set(row, col, *v);
        }
    }
    Ok(out)
}

pub(crate) fn checked_dim(base: &Group, n: usize, cap: usize) -> Result<usize> {
    let b = base.size();
    let mut dim: usize = 1;
    for _ in 0..n {
        dim = dim.checked_mul(b).filter(|&d| d <= cap).ok_or(Error::DimensionCap {
            dim: b.saturating_pow(n as u32),
            cap,
        })?;
    }
    Ok(dim)
}

/// A pure state on `C[base^n]`, slot 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState<T: Real> {
    base: Group,
    n: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> DenseState<T> {
    /// `|0…0⟩`.
    pub fn zero(base: &Group, n: usize, cap: usize) -> Result<Self> {
        Self::basis_index(base, n, 0, cap)
    }

    pub fn basis_index(base: &Group, n: usize, index: usize, cap: usize) -> Result<Self> {
        let dim = checked_dim(base, n, cap)?;
        let mut amps = vec![Complex::zero(); dim];
        amps[index] = Complex::one();
        Ok(DenseState {
            base: base.clone(),
            n,
            amps,
        })
    }

    /// `|g_0, …, g_{n-1}⟩` from residues of `base^n`.
    pub fn basis(base: &Group, n: usize, residues: &[i64], cap: usize) -> Result<Self> {
        let big = base.power(n);
        let e = big.element(residues)?;
        Self::basis_index(base, n, big.index_of(e.residues()), cap)
    }

    pub fn from_amplitudes(base: &Group, n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = checked_dim(base, n, usize::MAX)?;
        if amps.len() != dim {
            return Err(Error::InvalidElement(format!("expected {dim} amplitudes, got {}", amps.len())));
        }
        Ok(DenseState {
            base: base.clone(),
            n,
            amps,
        })
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn qudits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |a, v| a + v.norm_sqr())
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > T::zero() {
            for a in self.amps.iter_mut() {
                *a = *a / n;
            }
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState<T>) -> Result<Complex<T>> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::InvalidElement("state dimensions differ".into()));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    fn strides(&self) -> Vec<usize> {
        let b = self.base.size();
        (0..self.n).map(|s| b.pow((self.n - 1 - s) as u32)).collect()
    }

    /// Applies a matrix on `base^{slots.len()}` to the given slots.
    pub fn apply_local(&mut self, m: &DenseMatrix<T>, slots: &[usize]) -> Result<()> {
        check_slots(slots, self.n)?;
        let b = self.base.size();
        let local = b.pow(slots.len() as u32);
        if m.dim() != local {
            return Err(Error::InvalidElement(format!("local matrix has dimension {}, expected {local}", m.dim())));
        }
        let strides = self.strides();
        let offsets: Vec<usize> = (0..local)
            .map(|l| {
                let mut rem = l;
                let mut off = 0;
                for &s in slots.iter().rev() {
                    off += (rem % b) * strides[s];
                    rem /= b;
                }
                off
            })
            .collect();
        let anchors: Vec<usize> = (0..self.amps.len())
            .filter(|&i| slots.iter().all(|&s| (i / strides[s]).is_multiple_of(b)))
            .collect();
        let mut buf = vec![Complex::zero(); local];
        for a in anchors {
            for (l, off) in offsets.iter().enumerate() {
                buf[l] = self.amps[a + off];
            }
            let out = m.apply(&buf);
            for (l, off) in offsets.iter().enumerate() {
                self.amps[a + off] = out[l];
            }
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate, slots: &[usize]) -> Result<()> {
        let m = gate_matrix::<T>(gate, &self.base.power(slots.len()), usize::MAX)?;
        self.apply_local(&m, slots)
    }

    /// Applies a Pauli over the full group `base^n` (a monomial, no matrix).
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        let plan = PauliPlan::new(&self.base.power(self.n), p)?;
        plan.apply(self);
        Ok(())
    }

    /// Replaces slot `slot`, currently `|0⟩`, by `vector`.
    pub fn prepare_slot(&mut self, slot: usize, vector: &[Complex<T>]) -> Result<()> {
        check_slots(&[slot], self.n)?;
        let b = self.base.size();
        if vector.len() != b {
            return Err(Error::InvalidElement(format!("slot vector needs {b} amplitudes")));
        }
        let stride = self.strides()[slot];
        let mut out = vec![Complex::zero(); self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !(i / stride).is_multiple_of(b) {
                return Err(Error::Circuit(format!("slot {slot} is not in |0⟩ at preparation")));
            }
            for (v, &c) in vector.iter().enumerate() {
                out[i + v * stride] = out[i + v * stride] + a * c;
            }
        }
        self.amps = out;
        Ok(())
    }

    /// Spectral projections for an observable `P̂` over `base^n` with `P̂^m = I`:
    /// returns `(k, probability, normalized post-state)` for each eigenphase
    /// `k/m` with probability above the cutoff.
    pub fn eigen_projections(&self, obs: &PauliOperator, m: i64) -> Result<Vec<(i64, T, DenseState<T>)>> {
        let m_us = m as usize;
        let plan = PauliPlan::new(&self.base.power(self.n), obs)?;
        let mut powers = Vec::with_capacity(m_us);
        let mut cur = self.clone();
        for _ in 0..m_us {
            powers.push(cur.amps.clone());
            plan.apply(&mut cur);
        }
        let inv_m = T::lit(1.0 / m as f64);
        let mut out = Vec::new();
        for k in 0..m {
            let mut amps = vec![Complex::zero(); self.amps.len()];
            for (t, pw) in powers.iter().enumerate() {
                let c = cis::<T>(Phase::new(-(t as i64) * k, m)) * inv_m;
                for (a, v) in amps.iter_mut().zip(pw) {
                    *a = *a + c * v;
                }
            }
            let mut st = DenseState {
                base: self.base.clone(),
                n: self.n,
                amps,
            };
            let p = st.norm_sqr();
            if p > T::prob_cutoff() {
                st.normalize();
                out.push((k, p, st));
            }
        }
        Ok(out)
    }
}

/// A Pauli monomial precomputed as a permutation with phases.
struct PauliPlan<T: Real> {
    target: Vec<usize>,
    factor: Vec<Complex<T>>,
}

impl<T: Real> PauliPlan<T> {
    fn new(big: &Group, p: &PauliOperator) -> Result<Self> {
        big.ensure_same(p.group())?;
        let q = big.orders();
        let d = q.len();
        let l = big.exponent();
        let roots: Vec<Complex<T>> = (0..l).map(|k| cis::<T>(Phase::new(k, l) + p.phase())).collect();
        let (gx, chi) = (p.vector().x(), p.vector().z());
        let weight: Vec<i64> = (0..d).map(|i| chi[i] * (l / q[i]) % l).collect();
        let mut stride = vec![1usize; d];
        for i in (0..d.saturating_sub(1)).rev() {
            stride[i] = stride[i + 1] * q[i + 1] as usize;
        }
        let size = big.size();
        let mut target = Vec::with_capacity(size);
        let mut factor = Vec::with_capacity(size);
        let mut h = vec![0i64; d];
        for _ in 0..size {
            let mut to = 0usize;
            let mut ph = 0i64;
            for i in 0..d {
                to += ((h[i] + gx[i]) % q[i]) as usize * stride[i];
                ph += weight[i] * h[i];
            }
            target.push(to);
            factor.push(roots[(ph % l) as usize]);
            // Odometer, last factor fastest.
            for i in (0..d).rev() {
                h[i] += 1;
                if h[i] < q[i] {
                    break;
                }
                h[i] = 0;
            }
        }
        Ok(PauliPlan { target, factor })
    }

    fn apply(&self, s: &mut DenseState<T>) {
        let mut out = vec![Complex::zero(); s.amps.len()];
        for (h, a) in s.amps.iter().enumerate() {
            out[self.target[h]] = self.factor[h] * a;
        }
        s.amps = out;
    }
}

/// `|⟨a|b⟩| ≥ 1 − tol` for normalized states.
pub fn states_equal_up_to_phase<T: Real>(a: &DenseState<T>, b: &DenseState<T>) -> Result<bool> {
    Ok(a.inner(b)?.norm() >= T::one() - T::default_tolerance())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::cx_automorphism;
    use crate::hom::HomMatrix;

    fn z2() -> Group {
        Group::new(&[2]).unwrap()
    }

    #[test]
    fn hadamard() {
        let h = gate_matrix::<f64>(&Gate::Fourier(HomMatrix::identity(&z2())), &z2(), 16).unwrap();
        let s = 1.0 / 2f64.sqrt();
        for (r, c, v) in [(0, 0, s), (0, 1, s), (1, 0, s), (1, 1, -s)] {
            assert!((h.get(r, c) - Complex::new(v, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn cx_on_basis() {
        let g = z2();
        let cx = dense_gate::<f64>(&Gate::Automorphism(cx_automorphism(&g)), &[0, 1], &g, 2, 64).unwrap();
        let mut s = DenseState::<f64>::basis(&g, 2, &[1, 0], 64).unwrap();
        s.amps = cx.apply(&s.amps);
        assert!(states_equal_up_to_phase(&s, &DenseState::basis(&g, 2, &[1, 1], 64).unwrap()).unwrap());
        let id = gate_matrix::<f64>(&Gate::Automorphism(HomMatrix::identity(&g)), &g, 16).unwrap();
        assert!(id.approx_eq(&DenseMatrix::identity(2), 0.0));
    }

    #[test]
    fn local_application_matches_full_matrix() {
        let g = Group::new(&[3]).unwrap();
        let f = Gate::Fourier(HomMatrix::identity(&g));
        let full = dense_gate::<f64>(&f, &[1], &g, 3, 64).unwrap();
        let mut s = DenseState::<f64>::basis(&g, 3, &[1, 2, 0], 64).unwrap();
        let expect = full.apply(&s.amps);
        s.apply_gate(&f, &[1]).unwrap();
        for (a, b) in s.amps.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(full.is_unitary(1e-12));
    }

    #[test]
    fn phase_equality() {
        let g = z2();
        let a = DenseState::<f64>::basis(&g, 1, &[0], 4).unwrap();
        let mut b = a.clone();
        b.amps[0] = Complex::new(0.0, 1.0);
        assert!(states_equal_up_to_phase(&a, &b).unwrap());
        let c = DenseState::<f64>::basis(&g, 1, &[1], 4).unwrap();
        assert!(!states_equal_up_to_phase(&a, &c).unwrap());
    }

    #[test]
    fn cap_enforced() {
        let g = Group::new(&[4, 2]).unwrap();
        assert!(matches!(DenseState::<f64>::zero(&g, 5, 4096), Err(Error::DimensionCap { .. })));
    }
}
