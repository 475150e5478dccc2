//! Integer partitions: the index set for characters, power-sum monomials and Hurwitz data.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::exact::{int, rat, Rational};

/// Weakly decreasing sequence of positive parts. Canonical at construction, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts into decreasing order; zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(d)`.
    pub fn row(d: usize) -> Self {
        Self::new(vec![d])
    }

    /// The one-column partition `(1^d)`.
    pub fn column(d: usize) -> Self {
        Self::new(vec![1; d])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|mu|`
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `l(mu)`
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_i(mu)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Distinct part values with their multiplicities, in increasing order of value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=cols)
                .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
                .collect(),
        }
    }

    /// `kappa_mu = |mu| + sum_i (mu_i^2 - 2 i mu_i)` with rows indexed from 1.
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let (i, p) = (i as i64 + 1, p as i64);
                p * p - 2 * i * p + p
            })
            .sum()
    }

    /// `n(mu) = sum_i (i - 1) mu_i`.
    pub fn n_weight(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (i * p) as u64)
            .sum()
    }

    /// Hook lengths, one per cell, in row-major order.
    pub fn hooks(&self) -> Vec<usize> {
        let t = self.transpose();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + t.parts[j] - i - 1);
            }
        }
        out
    }

    /// `|Aut(mu)| = prod_j m_j(mu)!`
    pub fn aut_order(&self) -> u128 {
        self.multiplicities()
            .values()
            .map(|&m| (1..=m as u128).product::<u128>())
            .product()
    }

    /// `z_mu = prod_j m_j(mu)! j^m_j(mu)`, the centralizer order of a permutation of type `mu`.
    pub fn z(&self) -> u128 {
        self.multiplicities()
            .iter()
            .map(|(&j, &m)| (1..=m as u128).product::<u128>() * (j as u128).pow(m as u32))
            .product()
    }

    pub fn z_rational(&self) -> Rational {
        Rational::from_integer(self.z().into())
    }

    pub fn aut_rational(&self) -> Rational {
        Rational::from_integer(self.aut_order().into())
    }

    /// Removes one part equal to `k`, if present.
    pub fn remove_part(&self, k: usize) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    pub fn with_part(&self, k: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.push(k);
        Partition::new(parts)
    }

    /// Multiset union `mu ∪ nu`; this is the partition of the monomial `p_mu p_nu`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// Every sub-multiset of the parts, each exactly once (including empty and full).
    pub fn sub_multisets(&self) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        for (&value, &m) in self.multiplicities().iter().rev() {
            let mut next = Vec::with_capacity(out.len() * (m + 1));
            for base in &out {
                for take in 0..=m {
                    let mut parts = base.parts.clone();
                    parts.extend(std::iter::repeat_n(value, take));
                    next.push(Partition { parts });
                }
            }
            out = next;
        }
        out
    }

    /// Multiset difference `self - other`, if `other` is a sub-multiset.
    pub fn difference(&self, other: &Partition) -> Option<Partition> {
        let mut rest = self.clone();
        for &p in &other.parts {
            rest = rest.remove_part(p)?;
        }
        Some(rest)
    }

    /// Comma-separated parts, the CLI argument form.
    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Ord for Partition {
    /// Increasing size, then reverse-lexicographic within a size: `(4) < (3,1) < (2,2)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: usize = tok.trim().parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: format!("{tok:?} is not a positive integer"),
            })?;
            if p == 0 {
                return Err(Error::Parse {
                    input: s.to_string(),
                    reason: "parts must be positive".into(),
                });
            }
            parts.push(p);
        }
        Ok(Partition::new(parts))
    }
}

impl From<&[usize]> for Partition {
    fn from(parts: &[usize]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(parts: [usize; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first and `(1^n)` last.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            prefix.push(first);
            rec(rest - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions with `1 <= |mu| <= max_size`, in the canonical order.
pub fn partitions_up_to(max_size: usize) -> Vec<Partition> {
    (1..=max_size).flat_map(enumerate_partitions).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CutJoinKind {
    Cut,
    Join,
}

/// One term of the transposition class sum acting on a permutation of type `source`.
///
/// `coefficient` is the number of products `t * h` (t a transposition, h of the source type)
/// that land on type `target`; equivalently the coefficient of `p_target` in the image of
/// `p_source` under one half of the cut-and-join operator.
#[derive(Clone, PartialEq, Debug)]
pub struct CutJoinNeighbor {
    pub target: Partition,
    pub kind: CutJoinKind,
    /// The two pieces `(i, j)`, `i <= j`: merged by a join, produced by a cut.
    pub pieces: (usize, usize),
    pub coefficient: Rational,
}

/// Every partition reachable from `mu` by one cut or one join, joins first.
pub fn cut_join_neighbors(mu: &Partition) -> Vec<CutJoinNeighbor> {
    let m = mu.multiplicities();
    let values: Vec<usize> = m.keys().copied().collect();
    let mut joins = Vec::new();
    for (a, &i) in values.iter().enumerate() {
        for &j in &values[a..] {
            let (mi, mj) = (m[&i], m[&j]);
            let count = if i == j {
                if mi < 2 {
                    continue;
                }
                i * i * mi * (mi - 1) / 2
            } else {
                i * j * mi * mj
            };
            let target = mu
                .remove_part(i)
                .and_then(|r| r.remove_part(j))
                .expect("parts present")
                .with_part(i + j);
            joins.push(CutJoinNeighbor {
                target,
                kind: CutJoinKind::Join,
                pieces: (i, j),
                coefficient: int(count as i64),
            });
        }
    }
    let mut cuts = Vec::new();
    for (&k, &mk) in &m {
        for i in 1..=k / 2 {
            let j = k - i;
            let count = if i == j { i * mk } else { k * mk };
            let target = mu.remove_part(k).unwrap().with_part(i).with_part(j);
            cuts.push(CutJoinNeighbor {
                target,
                kind: CutJoinKind::Cut,
                pieces: (i, j),
                coefficient: int(count as i64),
            });
        }
    }
    joins.sort_by(|a, b| a.target.cmp(&b.target));
    cuts.sort_by(|a, b| a.target.cmp(&b.target));
    joins.extend(cuts);
    joins
}

/// Coefficient of `p_mu` in `(1/2) sum_{i,j} i j p_{i+j} (d p_nu1 / d p_i)(d p_nu2 / d p_j)`,
/// the weight with which an ordered pair of pieces glues into `mu`.
pub fn split_coefficient(nu1: &Partition, nu2: &Partition, mu: &Partition) -> Rational {
    if nu1.size() + nu2.size() != mu.size() || nu1.length() + nu2.length() != mu.length() + 1 {
        return int(0);
    }
    let m1 = nu1.multiplicities();
    let m2 = nu2.multiplicities();
    let mut total = 0usize;
    for (&i, &mi) in &m1 {
        for (&j, &mj) in &m2 {
            let glued = nu1
                .remove_part(i)
                .unwrap()
                .union(&nu2.remove_part(j).unwrap())
                .with_part(i + j);
            if &glued == mu {
                total += i * j * mi * mj;
            }
        }
    }
    rat(total as i64, 2)
}
