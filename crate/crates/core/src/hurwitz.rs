//! Hurwitz numbers: character sums, brute-force transposition factorizations, connected
//! numbers via the log of the generating function, ELSV and the cut-and-join recursion.
//!
//! Normalization: `H•_{r,mu}` counts `r`-tuples of transpositions whose product is one fixed
//! permutation of cycle type `mu`, divided by `z_mu`. `H_{g,mu}` restricts to tuples that,
//! together with that permutation, act transitively; `r = 2g - 2 + |mu| + l(mu)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{central_character_transposition, character};
use crate::error::{Error, Result};
use crate::exact::linalg::solve;
use crate::exact::ring::{binomial, factorial, ser_rat};
use crate::exact::{int, rat_big, LaurentSeries, Rational, Ring};
use crate::genfun::{ps_log, PartitionSeries};
use crate::genus_one::{elsv_hodge_form, GenusOneForm};
use crate::partitions::{cut_join_neighbors, enumerate_partitions, split_coefficient, Partition};

/// Default cap on the number of tuples the brute-force oracle may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Number of simple branch points, `2g - 2 + |mu| + l(mu)`.
pub fn branch_points(g: u32, mu: &Partition) -> i64 {
    2 * g as i64 - 2 + (mu.size() + mu.length()) as i64
}

/// The genus with `r = 2g - 2 + |mu| + l(mu)`, if there is one.
pub fn genus_of(r: u32, mu: &Partition) -> Option<u32> {
    let twice = r as i64 + 2 - (mu.size() + mu.length()) as i64;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}

/// `H•_{r,mu} = (1/z_mu) (1/d!) sum_nu dim(nu) f_nu^r chi_nu(mu)`, with `f_nu` the central
/// character of the transposition class.
pub fn hurwitz_disconnected(r: u32, mu: &Partition) -> Rational {
    let d = mu.size();
    let mut acc = int(0);
    for nu in enumerate_partitions(d) {
        let chi = character(&nu, mu).expect("same size");
        if chi == 0 {
            continue;
        }
        let dim = character(&nu, &Partition::column(d)).expect("same size");
        let f = central_character_transposition(&nu);
        acc += int(dim * chi) * f.pow(r as i32);
    }
    acc / rat_big(factorial(d as u64)) / mu.z_rational()
}

type Perm = Vec<usize>;

/// A permutation of cycle type `mu` with cycles on consecutive blocks.
fn canonical_permutation(mu: &Partition) -> Perm {
    let mut p: Perm = (0..mu.size()).collect();
    let mut start = 0;
    for &len in mu.parts() {
        for k in 0..len {
            p[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    p
}

fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for s in 0..p.len() {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
            }
        }
    }
    cycles
}

/// `p` followed by swapping the values at `a` and `b` (right multiplication by `(a b)`).
fn times_transposition(p: &mut [usize], a: usize, b: usize) {
    p.swap(a, b);
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut x = x;
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn is_transitive(d: usize, sigma: &[usize], tuple: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..d).collect();
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for (i, &s) in sigma.iter().enumerate() {
        union(&mut parent, i, s);
    }
    for &(a, b) in tuple {
        union(&mut parent, a, b);
    }
    let root = find(&mut parent, 0);
    (0..d).all(|x| find(&mut parent, x) == root)
}

/// Approximate number of tuples the brute-force search visits.
pub fn bruteforce_cost(d: usize, r: u32) -> u128 {
    let t = (d * d.saturating_sub(1) / 2) as u128;
    t.checked_pow(r).unwrap_or(u128::MAX)
}

/// Counts transposition `r`-tuples with product the canonical permutation of type `mu`, by
/// exhaustive search with distance pruning, then divides by `z_mu`.
pub fn hurwitz_bruteforce(
    r: u32,
    mu: &Partition,
    transitive_only: bool,
    budget: u128,
) -> Result<Rational> {
    let d = mu.size();
    let cost = bruteforce_cost(d, r);
    if cost > budget {
        return Err(Error::BudgetExceeded {
            estimate: cost,
            budget,
        });
    }
    let sigma = canonical_permutation(mu);
    let transpositions: Vec<(usize, usize)> = (0..d)
        .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
        .collect();
    if r == 0 {
        let identity: Perm = (0..d).collect();
        let hit = identity == sigma && (!transitive_only || is_transitive(d, &sigma, &[]));
        return Ok(if hit {
            int(1) / mu.z_rational()
        } else {
            int(0)
        });
    }

    struct Search<'a> {
        d: usize,
        r: usize,
        sigma: &'a [usize],
        transpositions: &'a [(usize, usize)],
        transitive_only: bool,
    }

    impl Search<'_> {
        /// Tuples completing `prefix` (whose product is `current`) to a factorization of sigma.
        fn count(&self, current: &mut Perm, prefix: &mut Vec<(usize, usize)>) -> u64 {
            let remaining = self.r - prefix.len();
            // The quotient current^{-1} sigma needs at least d - cycles transpositions, with
            // matching parity.
            let mut inv = vec![0; self.d];
            for (i, &x) in current.iter().enumerate() {
                inv[x] = i;
            }
            let quotient: Perm = self.sigma.iter().map(|&x| inv[x]).collect();
            let dist = self.d - cycle_count(&quotient);
            if dist > remaining || !(remaining - dist).is_multiple_of(2) {
                return 0;
            }
            if remaining == 0 {
                let ok = !self.transitive_only || is_transitive(self.d, self.sigma, prefix);
                return u64::from(ok);
            }
            let mut total = 0;
            for &(a, b) in self.transpositions {
                let mut next = current.clone();
                times_transposition(&mut next, a, b);
                prefix.push((a, b));
                total += self.count(&mut next, prefix);
                prefix.pop();
            }
            total
        }
    }

    let search = Search {
        d,
        r: r as usize,
        sigma: &sigma,
        transpositions: &transpositions,
        transitive_only,
    };
    let total: u64 = transpositions
        .par_iter()
        .map(|&(a, b)| {
            let mut start: Perm = (0..d).collect();
            times_transposition(&mut start, a, b);
            search.count(&mut start, &mut vec![(a, b)])
        })
        .sum();
    Ok(int(total as i64) / mu.z_rational())
}

/// Connected Hurwitz numbers for all `|mu| <= max_degree` and `r <= max_r`, from
/// `log sum_{r,mu} H•_{r,mu} lambda^r / r! p_mu`.
#[derive(Clone, Debug)]
pub struct HurwitzTable {
    pub max_degree: usize,
    pub max_r: u32,
    connected: HashMap<(u32, Partition), Rational>,
}

impl HurwitzTable {
    pub fn new(max_degree: usize, max_r: u32) -> Result<Self> {
        let order = max_r as i64;
        let mut terms = Vec::new();
        for d in 1..=max_degree {
            for mu in enumerate_partitions(d) {
                let coeffs: Vec<Rational> = (0..=max_r)
                    .map(|r| hurwitz_disconnected(r, &mu) / rat_big(factorial(r as u64)))
                    .collect();
                terms.push((mu, LaurentSeries::new(0, coeffs, order)));
            }
        }
        let mut g = PartitionSeries::from_terms(terms, max_degree as i64);
        g.add_term(
            Partition::empty(),
            &LaurentSeries::new(0, vec![int(1)], order),
        );
        let f = ps_log(&g)?;
        let mut connected = HashMap::new();
        for (mu, series) in f.terms() {
            for r in 0..=max_r {
                let v = series.checked_coeff(r as i64)? * rat_big(factorial(r as u64));
                if !v.is_zero() {
                    connected.insert((r, mu.clone()), v);
                }
            }
        }
        Ok(HurwitzTable {
            max_degree,
            max_r,
            connected,
        })
    }

    /// `H_{r,mu}` (connected); zero outside the computed range is an error.
    pub fn by_r(&self, r: i64, mu: &Partition) -> Result<Rational> {
        if r < 0 {
            return Ok(int(0));
        }
        if r > self.max_r as i64 || mu.size() > self.max_degree {
            return Err(Error::TruncationExceeded {
                requested: r,
                available: self.max_r as i64,
            });
        }
        Ok(self
            .connected
            .get(&(r as u32, mu.clone()))
            .cloned()
            .unwrap_or_else(|| int(0)))
    }

    /// `H_{g,mu}`; negative genus gives zero.
    pub fn get(&self, g: i64, mu: &Partition) -> Result<Rational> {
        if g < 0 {
            return Ok(int(0));
        }
        self.by_r(branch_points(g as u32, mu), mu)
    }
}

/// `H_{g,mu}` through the exp/log relation.
pub fn hurwitz_connected(g: u32, mu: &Partition) -> Result<Rational> {
    let r = branch_points(g, mu);
    if r < 0 {
        return Ok(int(0));
    }
    HurwitzTable::new(mu.size(), r as u32)?.get(g as i64, mu)
}

/// `r! / |Aut mu| prod mu_i^{mu_i} / mu_i!`, the combinatorial factor in ELSV.
pub fn elsv_prefactor(g: u32, mu: &Partition) -> Rational {
    let r = branch_points(g, mu).max(0) as u64;
    let mut acc = rat_big(factorial(r)) / mu.aut_rational();
    for &m in mu.parts() {
        acc *= rat_big(num_bigint::BigInt::from(m).pow(m as u32)) / rat_big(factorial(m as u64));
    }
    acc
}

/// The linear Hodge integral `int Lambda_g(1) / prod (1 - mu_i psi_i)` for `g <= 1`.
pub fn elsv_hodge_integral(g: u32, mu: &Partition) -> Result<Rational> {
    match g {
        0 => Ok(int(mu.size() as i64).pow(mu.length() as i32 - 3)),
        1 => Ok(elsv_hodge_form(mu).value()),
        _ => Err(Error::Unsupported(format!(
            "ELSV Hodge side is only available for g <= 1, got g = {g}"
        ))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElsvCheck {
    pub g: u32,
    pub mu: Partition,
    #[serde(serialize_with = "ser_rat")]
    pub hurwitz: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub elsv: Rational,
    pub passed: bool,
}

pub fn elsv_check_with(table: &HurwitzTable, g: u32, mu: &Partition) -> Result<ElsvCheck> {
    let elsv = elsv_prefactor(g, mu) * elsv_hodge_integral(g, mu)?;
    let hurwitz = table.get(g as i64, mu)?;
    Ok(ElsvCheck {
        g,
        mu: mu.clone(),
        passed: hurwitz == elsv,
        hurwitz,
        elsv,
    })
}

pub fn elsv_check(g: u32, mu: &Partition) -> Result<ElsvCheck> {
    elsv_hodge_integral(g, mu)?;
    let table = HurwitzTable::new(mu.size(), branch_points(g, mu).max(0) as u32)?;
    elsv_check_with(&table, g, mu)
}

/// The two genus-one base integrals `(<tau_1>_1, <lambda_1>_{1,1})` recovered from
/// `H_{1,(d)}` for the given degrees by an exact linear solve.
pub fn solve_hodge_from_hurwitz(degrees: &[usize]) -> Result<GenusOneForm> {
    let max_d = degrees.iter().copied().max().unwrap_or(0);
    let mu_max = Partition::row(max_d);
    let table = HurwitzTable::new(max_d, branch_points(1, &mu_max).max(0) as u32)?;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &d in degrees {
        let mu = Partition::row(d);
        let pre = elsv_prefactor(1, &mu);
        let form = elsv_hodge_form(&mu);
        rows.push(vec![&pre * &form.psi, &pre * &form.lambda]);
        rhs.push(table.get(1, &mu)?);
    }
    let x = solve(&rows, &rhs)?;
    Ok(GenusOneForm {
        psi: x[0].clone(),
        lambda: x[1].clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HurwitzCutJoinCheck {
    pub g: u32,
    pub mu: Partition,
    #[serde(serialize_with = "ser_rat")]
    pub lhs: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub rhs: Rational,
    pub passed: bool,
}

/// Right-hand side of the cut-and-join recursion
/// `H_{g,mu} = sum_{cut sources} c H_{g,nu} + sum_{join sources} c H_{g-1,nu}
/// + sum binom(r-1, r_1) I3 H_{g1,nu1} H_{g2,nu2}`, with `c` the coefficient of `p_mu` in
/// `Omega(p_nu)/2` and the last sum over ordered pairs with `g1 + g2 = g`. With no branch points
/// the only cover is the identity, `H_{0,(1)} = 1`.
fn cut_join_rhs(
    g: u32,
    mu: &Partition,
    h: &mut dyn FnMut(i64, &Partition) -> Result<Rational>,
) -> Result<Rational> {
    let d = mu.size();
    let r = branch_points(g, mu);
    if r < 1 {
        return Ok(int(i64::from(r == 0)));
    }
    let mut rhs = int(0);
    for nu in enumerate_partitions(d) {
        for n in cut_join_neighbors(&nu) {
            if &n.target != mu {
                continue;
            }
            let genus = if nu.length() < mu.length() {
                g as i64
            } else {
                g as i64 - 1
            };
            rhs += &n.coefficient * h(genus, &nu)?;
        }
    }
    for d1 in 1..d {
        for nu1 in enumerate_partitions(d1) {
            for nu2 in enumerate_partitions(d - d1) {
                let w = split_coefficient(&nu1, &nu2, mu);
                if w.is_zero() {
                    continue;
                }
                for g1 in 0..=g {
                    let r1 = branch_points(g1, &nu1);
                    if r1 < 0 || r1 > r - 1 {
                        continue;
                    }
                    let h1 = h(g1 as i64, &nu1)?;
                    let h2 = h((g - g1) as i64, &nu2)?;
                    let b = rat_big(binomial((r - 1) as u64, r1 as u64));
                    rhs += &w * b * h1 * h2;
                }
            }
        }
    }
    Ok(rhs)
}

pub fn hurwitz_cutjoin_check(
    table: &HurwitzTable,
    g: u32,
    mu: &Partition,
) -> Result<HurwitzCutJoinCheck> {
    let lhs = table.get(g as i64, mu)?;
    let rhs = cut_join_rhs(g, mu, &mut |g, nu| table.get(g, nu))?;
    Ok(HurwitzCutJoinCheck {
        g,
        mu: mu.clone(),
        passed: lhs == rhs,
        lhs,
        rhs,
    })
}

/// `H_{g,mu}` by running the cut-and-join recursion down to `H_{0,(1)} = 1`.
pub fn hurwitz_by_recursion(g: u32, mu: &Partition) -> Result<Rational> {
    fn go(
        g: i64,
        mu: &Partition,
        memo: &mut HashMap<(i64, Partition), Rational>,
    ) -> Result<Rational> {
        if g < 0 || branch_points(g as u32, mu) < 0 {
            return Ok(int(0));
        }
        if let Some(v) = memo.get(&(g, mu.clone())) {
            return Ok(v.clone());
        }
        let v = cut_join_rhs(g as u32, mu, &mut |g2, nu| go(g2, nu, memo))?;
        memo.insert((g, mu.clone()), v.clone());
        Ok(v)
    }
    go(g as i64, mu, &mut HashMap::new())
}
