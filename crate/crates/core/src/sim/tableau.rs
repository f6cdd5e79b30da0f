//! Stabilizer states over `G^n` with exact phases.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::arith::{bezout, factorize, inv_mod, modp};
use crate::clifford::Gate;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::pauli::{beta_unchecked, check_slots, PauliOperator, PauliVector};
use crate::phase::Phase;

/// A pure stabilizer state, stored as a generating list of its stabilizer group.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerState {
    base: Group,
    n: usize,
    big: Group,
    gens: Vec<PauliOperator>,
}

fn coord(p: &PauliOperator, c: usize) -> i64 {
    let v = p.vector();
    let dn = v.x().len();
    if c < dn {
        v.x()[c]
    } else {
        v.z()[c - dn]
    }
}

/// Row echelon form over the mixed moduli of `G^n × Ĝ^n`, with overflow
/// rows so that greedy reduction decides membership.
struct Echelon {
    big: Group,
    orders: Vec<i64>,
    rows: Vec<Option<PauliOperator>>,
}

impl Echelon {
    fn new(big: &Group) -> Self {
        let mut orders = big.orders().to_vec();
        orders.extend_from_slice(big.orders());
        Echelon {
            big: big.clone(),
            rows: vec![None; orders.len()],
            orders,
        }
    }

    fn from_generators(big: &Group, gens: &[PauliOperator]) -> Result<Self> {
        let mut e = Echelon::new(big);
        for g in gens {
            e.insert(g.clone())?;
        }
        Ok(e)
    }

    fn insert(&mut self, h: PauliOperator) -> Result<()> {
        let mut work = vec![h];
        while let Some(mut h) = work.pop() {
            let mut placed = false;
            for c in 0..self.orders.len() {
                let q = self.orders[c];
                let a = coord(&h, c);
                if a == 0 {
                    continue;
                }
                match self.rows[c].take() {
                    None => {
                        let over = h.pow(q / a.gcd(&q));
                        if !over.is_identity() {
                            work.push(over);
                        }
                        self.rows[c] = Some(std::mem::replace(&mut h, PauliOperator::identity(&self.big)));
                        placed = true;
                        break;
                    }
                    Some(r) => {
                        let b = coord(&r, c);
                        if a % b == 0 {
                            h = h.mul_unchecked(&r.pow(-(a / b)));
                            self.rows[c] = Some(r);
                        } else {
                            let (g, x, y) = bezout(b, a)?;
                            let pivot = r.pow(x).mul_unchecked(&h.pow(y));
                            h = r.pow(-(a / g)).mul_unchecked(&h.pow(b / g));
                            let over = pivot.pow(q / g.gcd(&q));
                            if !over.is_identity() {
                                work.push(over);
                            }
                            self.rows[c] = Some(pivot);
                        }
                        debug_assert_eq!(coord(&h, c), 0);
                    }
                }
            }
            if !placed && !h.phase().is_zero() {
                return Err(Error::InternalReductionFailure(format!(
                    "stabilizer group contains the scalar {}",
                    h.phase()
                )));
            }
        }
        Ok(())
    }

    /// The stabilizer element `α·P_u`, if `u` lies in the span.
    fn reduce(&self, u: &PauliVector) -> Option<PauliOperator> {
        let mut target = u.x().to_vec();
        target.extend_from_slice(u.z());
        let mut acc = PauliOperator::identity(&self.big);
        for c in 0..self.orders.len() {
            let q = self.orders[c];
            let a = modp(target[c] - coord(&acc, c), q);
            if a == 0 {
                continue;
            }
            let r = self.rows[c].as_ref()?;
            let b = coord(r, c);
            let g = b.gcd(&q);
            if a % g != 0 {
                return None;
            }
            let k = modp((a / g) * inv_mod(b / g, q / g)?, q / g);
            acc = acc.mul_unchecked(&r.pow(k));
        }
        debug_assert_eq!(acc.vector(), u);
        Some(acc)
    }

    fn generators(self) -> Vec<PauliOperator> {
        self.rows.into_iter().flatten().collect()
    }

    /// Prime-power factorization of the order of the spanned group.
    fn order_factors(&self) -> BTreeMap<i64, u32> {
        let mut f = BTreeMap::new();
        for (c, r) in self.rows.iter().enumerate() {
            if let Some(r) = r {
                let q = self.orders[c];
                for (p, e) in factorize(q / coord(r, c).gcd(&q)) {
                    *f.entry(p).or_insert(0) += e;
                }
            }
        }
        f
    }
}

impl StabilizerState {
    /// `|0…0⟩`, stabilized by every `Z_{e_i}`.
    pub fn zero(base: &Group, n: usize) -> Self {
        let big = base.power(n);
        let dn = big.rank();
        let gens = (0..dn)
            .map(|i| PauliOperator::from_vector(Phase::ZERO, PauliVector::generator(&big, dn + i)))
            .collect();
        StabilizerState {
            base: base.clone(),
            n,
            big,
            gens,
        }
    }

    /// Builds a state from explicit generators, checking the invariants.
    pub fn from_generators(base: &Group, n: usize, gens: Vec<PauliOperator>) -> Result<Self> {
        let big = base.power(n);
        for g in &gens {
            big.ensure_same(g.group())?;
        }
        let s = StabilizerState {
            base: base.clone(),
            n,
            big,
            gens,
        };
        s.check()?;
        Ok(s)
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn qudits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.gens
    }

    /// Commutation, purity (group order `|G|^n`) and no scalar elements.
    pub fn check(&self) -> Result<()> {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[..i] {
                if !beta_unchecked(a.vector(), b.vector()).is_zero() {
                    return Err(Error::InvalidTableau("stabilizer generators do not commute".into()));
                }
            }
        }
        let e = Echelon::from_generators(&self.big, &self.gens)?;
        let mut want = BTreeMap::new();
        for &q in self.big.orders() {
            for (p, k) in factorize(q) {
                *want.entry(p).or_insert(0) += k;
            }
        }
        if e.order_factors() != want {
            return Err(Error::InvalidTableau("stabilizer group does not have order |G|^n".into()));
        }
        Ok(())
    }

    /// Conjugates every generator by a gate on `slots`.
    pub fn apply_gate(&mut self, gate: &Gate, slots: &[usize]) -> Result<()> {
        check_slots(slots, self.n)?;
        let local = self.base.power(slots.len());
        let tab = gate.tableau(&local)?;
        let d = self.base.rank();
        for g in self.gens.iter_mut() {
            let (mut x, mut z) = (g.vector().x().to_vec(), g.vector().z().to_vec());
            let mut lx = Vec::with_capacity(d * slots.len());
            let mut lz = Vec::with_capacity(d * slots.len());
            for &s in slots {
                lx.extend_from_slice(&x[s * d..(s + 1) * d]);
                lz.extend_from_slice(&z[s * d..(s + 1) * d]);
            }
            let img = tab.conjugate(&PauliOperator::from_vector(
                Phase::ZERO,
                PauliVector::from_reduced(&local, lx, lz),
            ))?;
            for (t, &s) in slots.iter().enumerate() {
                x[s * d..(s + 1) * d].copy_from_slice(&img.vector().x()[t * d..(t + 1) * d]);
                z[s * d..(s + 1) * d].copy_from_slice(&img.vector().z()[t * d..(t + 1) * d]);
            }
            *g = PauliOperator::from_vector(g.phase() + img.phase(), PauliVector::from_reduced(&self.big, x, z));
        }
        Ok(())
    }

    /// Measures `P̂` (over `G^n`, with `P̂^m = I`). Returns every possible
    /// exponent `k` (eigenvalue `e^{2πik/m}`, all equally likely) and the
    /// matching post-measurement states.
    pub fn measure_all(&self, obs: &PauliOperator, m: i64) -> Result<(Vec<i64>, Vec<StabilizerState>)> {
        self.big.ensure_same(obs.group())?;
        let u = obs.vector();
        let w0 = obs.phase();
        let b: Vec<i64> = self
            .gens
            .iter()
            .map(|g| {
                beta_unchecked(g.vector(), u)
                    .times_integral(m)
                    .map(|v| modp(v, m))
                    .ok_or_else(|| Error::InternalReductionFailure("commutation phase order exceeds m".into()))
            })
            .collect::<Result<_>>()?;
        let Some(star) = b.iter().position(|&v| v != 0) else {
            let e = Echelon::from_generators(&self.big, &self.gens)?;
            let alpha = e
                .reduce(u)
                .ok_or_else(|| Error::InternalReductionFailure("observable commutes with a pure state but is not stabilized".into()))?
                .phase();
            let k = (w0 - alpha)
                .times_integral(m)
                .ok_or_else(|| Error::InternalReductionFailure("eigenphase is not an m-th root".into()))?;
            return Ok((vec![modp(k, m)], vec![self.clone()]));
        };
        // Make every other generator commute with `u`, moving the pairing onto `star`.
        let mut gens = self.gens.clone();
        let mut b = b;
        for j in 0..gens.len() {
            if j == star || b[j] == 0 {
                continue;
            }
            let (bs, bj) = (b[star], b[j]);
            if bj % bs == 0 {
                gens[j] = gens[j].mul_unchecked(&gens[star].pow(-(bj / bs)));
            } else {
                let (g, x, y) = bezout(bs, bj)?;
                let s_new = gens[star].pow(x).mul_unchecked(&gens[j].pow(y));
                gens[j] = gens[star].pow(-(bj / g)).mul_unchecked(&gens[j].pow(bs / g));
                gens[star] = s_new;
                b[star] = g;
            }
            b[j] = 0;
        }
        let r = m / b[star].gcd(&m);
        let s_r = gens[star].pow(r);
        gens[star] = s_r;
        let e = Echelon::from_generators(&self.big, &gens)?;
        let ru = u.scale(r);
        let alpha = e
            .reduce(&ru)
            .ok_or_else(|| Error::InternalReductionFailure("power of the observable is not stabilized".into()))?
            .phase();
        let theta = obs.pow(r).phase() - alpha;
        let step = m / r;
        let k0 = theta
            .times_integral(step)
            .ok_or_else(|| Error::InternalReductionFailure("eigenphase of the power is not a root of unity".into()))?;
        let k0 = modp(k0, step);
        let commuting = e.generators();
        let mut ks = Vec::with_capacity(r as usize);
        let mut states = Vec::with_capacity(r as usize);
        for j in 0..r {
            let k = k0 + j * step;
            let mut e = Echelon::from_generators(&self.big, &commuting)?;
            e.insert(obs.with_phase(w0 + Phase::new(-k, m)))?;
            ks.push(k);
            states.push(StabilizerState {
                base: self.base.clone(),
                n: self.n,
                big: self.big.clone(),
                gens: e.generators(),
            });
        }
        Ok((ks, states))
    }

    /// Rewrites the generator list in echelon form.
    pub fn compact(&mut self) -> Result<()> {
        self.gens = Echelon::from_generators(&self.big, &self.gens)?.generators();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::HomMatrix;
    use crate::sim::normalized_observable;

    fn measure(s: &StabilizerState, v: &PauliVector) -> (Vec<i64>, Vec<StabilizerState>) {
        let (p, m) = normalized_observable(v);
        s.measure_all(&p, m).unwrap()
    }

    #[test]
    fn z_on_zero_is_deterministic() {
        let g = Group::new(&[4, 2]).unwrap();
        let s = StabilizerState::zero(&g, 1);
        let (ks, _) = measure(&s, &PauliVector::new(&g, &[0, 0], &[1, 0]).unwrap());
        assert_eq!(ks, vec![0]);
        s.check().unwrap();
    }

    #[test]
    fn x_on_zero_of_z4_is_uniform_and_repeatable() {
        let g = Group::new(&[4]).unwrap();
        let s = StabilizerState::zero(&g, 1);
        let x = PauliVector::new(&g, &[1], &[0]).unwrap();
        let (ks, states) = measure(&s, &x);
        assert_eq!(ks, vec![0, 1, 2, 3]);
        for (k, st) in ks.iter().zip(&states) {
            st.check().unwrap();
            assert_eq!(measure(st, &x).0, vec![*k]);
        }
    }

    #[test]
    fn fourier_then_x_is_deterministic() {
        let g = Group::new(&[3]).unwrap();
        let mut s = StabilizerState::zero(&g, 1);
        s.apply_gate(&Gate::Fourier(HomMatrix::identity(&g)), &[0]).unwrap();
        let (ks, _) = measure(&s, &PauliVector::new(&g, &[1], &[0]).unwrap());
        assert_eq!(ks.len(), 1);
    }

    #[test]
    fn partial_commutation_in_z4() {
        // X² on |0⟩ of Z4: outcomes {0, 1} of an order-2 observable.
        let g = Group::new(&[4]).unwrap();
        let s = StabilizerState::zero(&g, 1);
        let (ks, st) = measure(&s, &PauliVector::new(&g, &[2], &[0]).unwrap());
        assert_eq!(ks, vec![0, 1]);
        st[1].check().unwrap();
        // Z² still commutes and keeps its value.
        assert_eq!(measure(&st[1], &PauliVector::new(&g, &[0], &[2]).unwrap()).0.len(), 1);
    }
}
