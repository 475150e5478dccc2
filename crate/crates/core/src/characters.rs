//! Irreducible characters of `S_d` by the Murnaghan–Nakayama rule, central characters and
//! Schur functions in the power-sum basis.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ring::factorial;
use crate::exact::{int, QHalfLaurent, Rational, Ring};
use crate::genfun::PartitionSeries;
use crate::partitions::{enumerate_partitions, Partition};

/// Degrees whose full tables are built once per process.
pub const CACHED_TABLE_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CharacterValue {
    pub nu: Partition,
    pub mu: Partition,
    pub value: i64,
}

type MemoKey = (Vec<usize>, Vec<usize>);

thread_local! {
    static MEMO: RefCell<HashMap<MemoKey, i64>> = RefCell::new(HashMap::new());
}

/// `chi_nu(mu)`, the value of the irreducible character `nu` on the class `mu`.
pub fn character(nu: &Partition, mu: &Partition) -> Result<i64> {
    if nu.size() != mu.size() {
        return Err(Error::SizeMismatch {
            irrep: nu.to_string(),
            irrep_size: nu.size(),
            class: mu.to_string(),
            class_size: mu.size(),
        });
    }
    let d = nu.size();
    if d <= CACHED_TABLE_DEGREE {
        let table = &cached_tables()[d];
        return Ok(table.value(nu, mu).expect("table covers all pairs"));
    }
    Ok(mn(nu.parts(), mu.parts()))
}

/// Murnaghan–Nakayama on beta-numbers: a border strip of length `k` is a bead moved from
/// `b` to an empty position `b - k`, with sign given by the beads jumped over.
fn mn(shape: &[usize], cycles: &[usize]) -> i64 {
    let Some((&k, rest)) = cycles.split_first() else {
        return 1;
    };
    if shape.len() <= 1 && rest.is_empty() {
        return 1;
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(v) = MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let l = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - 1 - i)
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let ml = moved.len();
        let new_shape: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (ml - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&new_shape, rest);
    }
    MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

/// Full character table of `S_d`; rows are irreducibles, columns classes, both in
/// [`enumerate_partitions`] order.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub degree: usize,
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn compute(d: usize) -> Self {
        let partitions = enumerate_partitions(d);
        let values = partitions
            .iter()
            .map(|nu| {
                partitions
                    .iter()
                    .map(|mu| mn(nu.parts(), mu.parts()))
                    .collect()
            })
            .collect();
        CharacterTable {
            degree: d,
            partitions,
            values,
        }
    }

    fn index(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    pub fn value(&self, nu: &Partition, mu: &Partition) -> Option<i64> {
        Some(self.values[self.index(nu)?][self.index(mu)?])
    }
}

fn cached_tables() -> &'static [CharacterTable] {
    static TABLES: OnceLock<Vec<CharacterTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (0..=CACHED_TABLE_DEGREE)
            .map(CharacterTable::compute)
            .collect()
    })
}

pub fn character_table(d: usize) -> CharacterTable {
    if d <= CACHED_TABLE_DEGREE {
        cached_tables()[d].clone()
    } else {
        CharacterTable::compute(d)
    }
}

/// `dim R_nu = d! / prod h(x)`.
pub fn dimension_by_hooks(nu: &Partition) -> BigInt {
    let hooks: BigInt = nu.hooks().iter().map(|&h| BigInt::from(h)).product();
    factorial(nu.size() as u64) / hooks
}

/// `f_nu(C(2)) = |C(2)| chi_nu(C(2)) / dim R_nu`, from the character table.
pub fn central_character_transposition(nu: &Partition) -> Rational {
    let d = nu.size();
    if d < 2 {
        return int(0);
    }
    let mut transposition = vec![2];
    transposition.extend(std::iter::repeat_n(1, d - 2));
    let chi = character(nu, &Partition::new(transposition)).expect("sizes agree");
    let dim = character(nu, &Partition::column(d)).expect("sizes agree");
    let class_size = (d * (d - 1) / 2) as i64;
    Rational::new((class_size * chi).into(), dim.into())
}

/// `s_nu = sum_eta chi_nu(eta) / z_eta p_eta`.
#[derive(Clone, PartialEq, Debug)]
pub struct SchurExpansion {
    pub nu: Partition,
    pub terms: BTreeMap<Partition, Rational>,
}

impl SchurExpansion {
    pub fn to_series(&self, max_weight: i64) -> PartitionSeries<Rational> {
        PartitionSeries::from_terms(self.terms.clone(), max_weight)
    }
}

pub fn schur_in_p(nu: &Partition) -> SchurExpansion {
    let terms = enumerate_partitions(nu.size())
        .into_iter()
        .filter_map(|eta| {
            let chi = character(nu, &eta).expect("sizes agree");
            (chi != 0).then(|| {
                let c = Rational::new(chi.into(), eta.z().into());
                (eta, c)
            })
        })
        .collect();
    SchurExpansion {
        nu: nu.clone(),
        terms,
    }
}

/// `s_nu(1, q, q^2, ...) = q^{n(nu)} / prod (1 - q^{h(x)})` as a numerator/denominator pair.
pub fn schur_principal_specialization(nu: &Partition) -> (QHalfLaurent, QHalfLaurent) {
    let num = QHalfLaurent::q_pow(nu.n_weight() as i64);
    let den = nu.hooks().iter().fold(QHalfLaurent::one(), |acc, &h| {
        acc.times(&QHalfLaurent::one_minus_q_pow(h as i64))
    });
    (num, den)
}

/// Substitutes `x_i = q^{i-1}` for `i = 1..=vars` into the power-sum expansion of `s_nu` and
/// compares with the closed form through `q^order`.
///
/// With finitely many variables the two agree up to `q^{vars}`, since every omitted monomial
/// involves `x_{vars+1}`.
pub fn principal_specialization_check(nu: &Partition, order: usize) -> bool {
    let vars = order + 1;
    let len = order + 1;
    let poly_mul = |a: &[Rational], b: &[Rational]| {
        let mut out = vec![int(0); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    // p_k(1, q, ..., q^{vars-1}) truncated.
    let power_sum = |k: usize| {
        let mut v = vec![int(0); len];
        for i in 0..vars {
            if i * k < len {
                v[i * k] += int(1);
            }
        }
        v
    };
    let mut lhs = vec![int(0); len];
    for (eta, c) in schur_in_p(nu).terms {
        let mut prod = vec![int(0); len];
        prod[0] = int(1);
        for &k in eta.parts() {
            prod = poly_mul(&prod, &power_sum(k));
        }
        for (slot, x) in lhs.iter_mut().zip(prod) {
            *slot += &c * x;
        }
    }
    // q^n / prod(1 - q^h) = q^n prod_h sum_m q^{hm}
    let mut rhs = vec![int(0); len];
    let n = nu.n_weight() as usize;
    if n < len {
        rhs[n] = int(1);
    }
    for h in nu.hooks() {
        let geometric: Vec<Rational> = (0..len)
            .map(|e| if e % h == 0 { int(1) } else { int(0) })
            .collect();
        rhs = poly_mul(&rhs, &geometric);
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_up_to;

    fn p<const N: usize>(parts: [usize; N]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn small_values() {
        assert_eq!(character(&p([2, 1]), &p([3])).unwrap(), -1);
        assert_eq!(character(&p([2, 1]), &p([1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&p([2, 1]), &p([2, 1])).unwrap(), 0);
        assert!(character(&p([2]), &p([1, 1, 1])).is_err());
        assert_eq!(
            character(&Partition::empty(), &Partition::empty()).unwrap(),
            1
        );
    }

    #[test]
    fn trivial_and_sign() {
        for d in 1..=9 {
            for mu in enumerate_partitions(d) {
                assert_eq!(character(&Partition::row(d), &mu).unwrap(), 1);
                let sign = if (d - mu.length()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character(&Partition::column(d), &mu).unwrap(), sign);
            }
        }
    }

    #[test]
    fn uncached_agrees_with_table_at_boundary() {
        let d = CACHED_TABLE_DEGREE;
        let t = character_table(d);
        for (i, nu) in t.partitions.iter().enumerate() {
            for (j, mu) in t.partitions.iter().enumerate() {
                assert_eq!(mn(nu.parts(), mu.parts()), t.values[i][j]);
            }
        }
    }

    #[test]
    fn dimension_matches_hook_formula() {
        for nu in partitions_up_to(10) {
            let dim = character(&nu, &Partition::column(nu.size())).unwrap();
            assert_eq!(BigInt::from(dim), dimension_by_hooks(&nu), "{nu}");
        }
    }

    #[test]
    fn central_character_examples() {
        assert_eq!(central_character_transposition(&p([2])), int(1));
        assert_eq!(central_character_transposition(&p([1, 1])), int(-1));
        assert_eq!(central_character_transposition(&p([2, 1])), int(0));
        assert_eq!(central_character_transposition(&p([1])), int(0));
    }

    #[test]
    fn schur_examples() {
        let s2 = schur_in_p(&p([2])).terms;
        assert_eq!(s2[&p([1, 1])], Rational::new(1.into(), 2.into()));
        assert_eq!(s2[&p([2])], Rational::new(1.into(), 2.into()));
        let s11 = schur_in_p(&p([1, 1])).terms;
        assert_eq!(s11[&p([2])], Rational::new((-1).into(), 2.into()));
        let s1 = schur_in_p(&p([1])).terms;
        assert_eq!(s1.len(), 1);
        assert_eq!(s1[&p([1])], int(1));
    }

    #[test]
    fn principal_specialization_examples() {
        let (num, den) = schur_principal_specialization(&p([1, 1]));
        assert_eq!(num, QHalfLaurent::q_pow(1));
        let expected = QHalfLaurent::one_minus_q_pow(1).times(&QHalfLaurent::one_minus_q_pow(2));
        assert_eq!(den, expected);
        for nu in partitions_up_to(6) {
            assert!(principal_specialization_check(&nu, 10), "{nu}");
        }
    }
}
