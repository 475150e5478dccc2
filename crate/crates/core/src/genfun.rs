//! Generating functions `sum_mu c_mu p_mu` in the power sums, truncated by total weight.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::characters::{central_character_transposition, schur_in_p};
use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational, Ring};
use crate::partitions::Partition;

/// Finite map `mu -> c_mu` standing for `sum_mu c_mu p_mu`; monomials with `|mu| > max_weight`
/// are unknown, not zero.
#[derive(Clone, PartialEq, Debug)]
pub struct PartitionSeries<R> {
    terms: BTreeMap<Partition, R>,
    max_weight: i64,
}

impl<R: Ring> PartitionSeries<R> {
    pub fn zero(max_weight: i64) -> Self {
        PartitionSeries {
            terms: BTreeMap::new(),
            max_weight,
        }
    }

    pub fn one(max_weight: i64) -> Self {
        Self::monomial(Partition::empty(), R::one(), max_weight)
    }

    pub fn monomial(mu: Partition, c: R, max_weight: i64) -> Self {
        Self::from_terms([(mu, c)], max_weight)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, R)>, max_weight: i64) -> Self {
        let mut out = Self::zero(max_weight);
        for (mu, c) in terms {
            out.add_term(mu, &c);
        }
        out
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn add_term(&mut self, mu: Partition, c: &R) {
        if c.is_zero() || mu.size() as i64 > self.max_weight {
            return;
        }
        match self.terms.get_mut(&mu) {
            Some(slot) => {
                slot.plus_assign(c);
                if slot.is_zero() {
                    self.terms.remove(&mu);
                }
            }
            None => {
                self.terms.insert(mu, c.clone());
            }
        }
    }

    pub fn coeff(&self, mu: &Partition) -> R {
        self.terms.get(mu).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest weight carrying a nonzero coefficient; `max_weight + 1` for the zero series.
    pub fn weight_valuation(&self) -> i64 {
        self.terms
            .keys()
            .map(|mu| mu.size() as i64)
            .min()
            .unwrap_or(self.max_weight + 1)
    }

    pub fn truncate(&self, max_weight: i64) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
            max_weight.min(self.max_weight),
        )
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.truncate(rhs.max_weight);
        for (mu, c) in &rhs.terms {
            out.add_term(mu.clone(), c);
        }
        out
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.scaled(&int(-1)))
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        self.map_coeffs(|c| c.scaled(s))
    }

    /// Multiplies every coefficient by the ring element `s`.
    pub fn scale_by(&self, s: &R) -> Self {
        self.map_coeffs(|c| c.times(s))
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> PartitionSeries<S> {
        PartitionSeries::from_terms(
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
            self.max_weight,
        )
    }

    /// `p_alpha p_beta = p_{alpha ∪ beta}`; the result is known through
    /// `min(Wa + vb, Wb + va)` with `v` the weight valuations.
    pub fn times(&self, rhs: &Self) -> Self {
        let w = (self.max_weight + rhs.weight_valuation())
            .min(rhs.max_weight + self.weight_valuation());
        let mut out = Self::zero(w);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if (a.size() + b.size()) as i64 <= w {
                    out.add_term(a.union(b), &ca.times(cb));
                }
            }
        }
        out
    }

    /// `d/dp_i`; the result is known through weight `max_weight - i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.max_weight - i as i64);
        for (mu, c) in &self.terms {
            let m = mu.multiplicity(i);
            if m > 0 {
                out.add_term(mu.remove_part(i).unwrap(), &c.scaled(&int(m as i64)));
            }
        }
        out
    }

    /// Multiplication by `p_i`.
    pub fn times_p(&self, i: usize) -> Self {
        PartitionSeries {
            terms: self
                .terms
                .iter()
                .map(|(mu, c)| (mu.with_part(i), c.clone()))
                .collect(),
            max_weight: self.max_weight + i as i64,
        }
    }
}

impl<R: Ring + Serialize> Serialize for PartitionSeries<R> {
    /// A list of `{"partition": [...], "coeff": ...}` records in partition order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, R> {
            partition: &'a Partition,
            coeff: &'a R,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (partition, coeff) in &self.terms {
            seq.serialize_element(&Term { partition, coeff })?;
        }
        seq.end()
    }
}

/// Sums `sum_{alpha} |alpha| F_alpha G_{mu - alpha}` over nonempty sub-multisets `alpha` of
/// `mu`, skipping `alpha = mu` when `proper` is set.
fn euler_convolution<R: Ring>(
    f: &BTreeMap<Partition, R>,
    g: &BTreeMap<Partition, R>,
    mu: &Partition,
    proper: bool,
) -> R {
    let mut acc = R::zero();
    for alpha in mu.sub_multisets() {
        if alpha.is_empty() || (proper && alpha.length() == mu.length()) {
            continue;
        }
        let (Some(fa), Some(gb)) = (f.get(&alpha), g.get(&mu.difference(&alpha).unwrap())) else {
            continue;
        };
        acc.plus_assign(&fa.times(gb).scaled(&int(alpha.size() as i64)));
    }
    acc
}

fn partitions_in_support_closure(max_weight: i64) -> Vec<Partition> {
    crate::partitions::partitions_up_to(max_weight.max(0) as usize)
}

/// `exp(F)` by the Euler-operator recurrence `E e^F = (E F) e^F`, where `E p_mu = |mu| p_mu`.
pub fn ps_exp<R: Ring>(f: &PartitionSeries<R>) -> Result<PartitionSeries<R>> {
    if f.terms.contains_key(&Partition::empty()) {
        return Err(Error::BadPartitionTerm {
            partition: "()".into(),
            reason: "exp needs a vanishing constant term",
        });
    }
    let mut g: BTreeMap<Partition, R> = BTreeMap::new();
    g.insert(Partition::empty(), R::one());
    for mu in partitions_in_support_closure(f.max_weight) {
        let c = euler_convolution(&f.terms, &g, &mu, false);
        if !c.is_zero() {
            g.insert(mu.clone(), c.scaled(&rat(1, mu.size() as i64)));
        }
    }
    Ok(PartitionSeries::from_terms(g, f.max_weight))
}

/// `log(G)` for `G` with constant term one; inverse of [`ps_exp`].
pub fn ps_log<R: Ring>(g: &PartitionSeries<R>) -> Result<PartitionSeries<R>> {
    match g.terms.get(&Partition::empty()) {
        Some(c) if c.is_one() => {}
        _ => {
            return Err(Error::BadPartitionTerm {
                partition: "()".into(),
                reason: "log needs constant term 1",
            })
        }
    }
    let mut f: BTreeMap<Partition, R> = BTreeMap::new();
    for mu in partitions_in_support_closure(g.max_weight) {
        let correction = euler_convolution(&f, &g.terms, &mu, true);
        let c = g
            .coeff(&mu)
            .minus(&correction.scaled(&rat(1, mu.size() as i64)));
        if !c.is_zero() {
            f.insert(mu, c);
        }
    }
    Ok(PartitionSeries::from_terms(f, g.max_weight))
}

/// `Omega(F) = sum_{i,j >= 1} [ i j p_{i+j} d^2F/dp_i dp_j + (i+j) p_i p_j dF/dp_{i+j} ]`, the
/// sum running over ordered pairs.
pub fn cut_join_linear<R: Ring>(f: &PartitionSeries<R>) -> PartitionSeries<R> {
    let w = f.max_weight.max(0) as usize;
    let mut out = PartitionSeries::zero(f.max_weight);
    let firsts: Vec<PartitionSeries<R>> = (0..=w).map(|i| f.partial(i)).collect();
    for i in 1..=w {
        for j in 1..=w - i {
            let join = firsts[i].partial(j).times_p(i + j);
            out = out.plus(&join.scaled(&int((i * j) as i64)));
            let cut = firsts[i + j].times_p(i).times_p(j);
            out = out.plus(&cut.scaled(&int((i + j) as i64)));
        }
    }
    out
}

/// `Omega(F) + sum_{i,j} i j p_{i+j} (dF/dp_i)(dF/dp_j)`, satisfying
/// `Omega(e^F) = e^F * cut_join_nonlinear(F)`.
pub fn cut_join_nonlinear<R: Ring>(f: &PartitionSeries<R>) -> PartitionSeries<R> {
    let w = f.max_weight.max(0) as usize;
    let mut out = cut_join_linear(f);
    // i * dF/dp_i, so each product already carries the ij weight.
    let d: Vec<PartitionSeries<R>> = (0..=w)
        .map(|i| f.partial(i).scaled(&int(i as i64)))
        .collect();
    for i in 1..=w {
        for j in i..=w - i {
            let mut term = d[i].times(&d[j]).times_p(i + j);
            if i != j {
                term = term.scaled(&int(2));
            }
            out = out.plus(&term);
        }
    }
    out
}

/// Checks `f_nu(C(2)) s_nu = (1/2) Omega(s_nu)`.
pub fn character_cutjoin_identity(nu: &Partition) -> bool {
    let s = schur_in_p(nu).to_series(nu.size() as i64);
    let f = central_character_transposition(nu);
    s.scaled(&f) == cut_join_linear(&s).scaled(&rat(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p<const N: usize>(parts: [usize; N]) -> Partition {
        Partition::from(parts)
    }

    fn series(terms: &[(Partition, Rational)], w: i64) -> PartitionSeries<Rational> {
        PartitionSeries::from_terms(terms.iter().cloned(), w)
    }

    #[test]
    fn omega_examples() {
        let f = series(&[(p([2]), int(1))], 2);
        assert_eq!(cut_join_linear(&f), series(&[(p([1, 1]), int(2))], 2));
        let f = series(&[(p([1, 1]), int(1))], 2);
        assert_eq!(cut_join_linear(&f), series(&[(p([2]), int(2))], 2));
        let s2 = series(&[(p([1, 1]), rat(1, 2)), (p([2]), rat(1, 2))], 2);
        assert_eq!(cut_join_linear(&s2), s2.scaled(&int(2)));
    }

    #[test]
    fn omega_nonlinear_examples() {
        assert!(cut_join_nonlinear(&PartitionSeries::<Rational>::zero(4)).is_zero());
        let f = series(&[(p([1]), int(1))], 2);
        assert_eq!(cut_join_nonlinear(&f), series(&[(p([2]), int(1))], 2));
    }

    #[test]
    fn exp_of_p1() {
        let e = ps_exp(&series(&[(p([1]), int(1))], 5)).unwrap();
        let mut fact = 1i64;
        for k in 0..=5 {
            if k > 0 {
                fact *= k;
            }
            assert_eq!(e.coeff(&Partition::column(k as usize)), rat(1, fact));
        }
        assert_eq!(e.len(), 6);
        let one = ps_exp(&PartitionSeries::<Rational>::zero(4)).unwrap();
        assert_eq!(one, PartitionSeries::one(4));
    }

    #[test]
    fn exp_log_preconditions() {
        let bad = PartitionSeries::<Rational>::one(3);
        assert!(matches!(ps_exp(&bad), Err(Error::BadPartitionTerm { .. })));
        let bad = series(&[(p([1]), int(1))], 3);
        assert!(ps_log(&bad).is_err());
    }

    #[test]
    fn character_identity_small() {
        for nu in crate::partitions::partitions_up_to(5) {
            assert!(character_cutjoin_identity(&nu), "{nu}");
        }
    }

    #[test]
    fn product_weight_truncation() {
        let a = series(&[(p([1]), int(1))], 3);
        let b = series(&[(p([2]), int(1))], 4);
        let ab = a.times(&b);
        assert_eq!(ab.max_weight(), 5);
        assert_eq!(ab.coeff(&p([2, 1])), int(1));
    }
}
