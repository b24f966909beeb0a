//! Exact feasibility of `A x ≤ c` over the rationals by Fourier-Motzkin
//! elimination.

use std::collections::HashMap;

use crate::rational::{Rational, RationalError};

/// One inequality `Σ coeffs[i]·x_i ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    /// A contradiction `0 ≤ rhs < 0` appeared after `stage` eliminations;
    /// `variable` is the last one eliminated (`None` if present from the start).
    Infeasible { stage: usize, variable: Option<usize> },
}

#[derive(Debug, Clone, Default)]
pub struct System {
    vars: usize,
    rows: Vec<Inequality>,
}

impl System {
    pub fn new(vars: usize) -> Self {
        System { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `Σ terms ≤ rhs` from sparse `(variable, coefficient)` terms.
    pub fn add_le(&mut self, terms: &[(usize, Rational)], rhs: Rational) {
        let mut coeffs = vec![Rational::ZERO; self.vars];
        for &(i, c) in terms {
            coeffs[i] = coeffs[i] + c;
        }
        self.rows.push(Inequality { coeffs, rhs });
    }

    /// Adds `Σ terms ≥ rhs`.
    pub fn add_ge(&mut self, terms: &[(usize, Rational)], rhs: Rational) {
        let neg: Vec<(usize, Rational)> = terms.iter().map(|&(i, c)| (i, -c)).collect();
        self.add_le(&neg, -rhs);
    }

    pub fn rows(&self) -> &[Inequality] {
        &self.rows
    }

    /// True iff `x` satisfies every row.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|r| {
            let lhs = r.coeffs.iter().zip(x).fold(Rational::ZERO, |acc, (&a, &v)| acc + a * v);
            lhs <= r.rhs
        })
    }

    pub fn feasibility(&self) -> Result<Feasibility, RationalError> {
        let mut rows = prune(self.rows.clone())?;
        let mut alive: Vec<usize> = (0..self.vars).collect();
        let mut stage = 0;
        let mut last = None;
        loop {
            if rows.iter().any(|r| r.coeffs.iter().all(Rational::is_zero) && r.rhs.is_negative()) {
                return Ok(Feasibility::Infeasible { stage, variable: last });
            }
            rows.retain(|r| !r.coeffs.iter().all(Rational::is_zero));
            if rows.is_empty() || alive.is_empty() {
                return Ok(Feasibility::Feasible);
            }
            // Eliminate the variable producing the fewest combined rows.
            let (pos_of, var) = alive
                .iter()
                .enumerate()
                .map(|(k, &j)| {
                    let pos = rows.iter().filter(|r| r.coeffs[j].is_positive()).count();
                    let neg = rows.iter().filter(|r| r.coeffs[j].is_negative()).count();
                    (pos * neg, pos + neg == 0, k, j)
                })
                .min_by_key(|&(cost, _, k, _)| (cost, k))
                .map(|(_, _, k, j)| (k, j))
                .expect("a variable remains");
            alive.swap_remove(pos_of);

            let (mut upper, mut lower, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in rows {
                if r.coeffs[var].is_positive() {
                    upper.push(r);
                } else if r.coeffs[var].is_negative() {
                    lower.push(r);
                } else {
                    rest.push(r);
                }
            }
            for p in &upper {
                for q in &lower {
                    rest.push(combine(p, q, var)?);
                }
            }
            rows = prune(rest)?;
            stage += 1;
            last = Some(var);
        }
    }
}

/// `p` has a positive and `q` a negative coefficient on `var`; the result
/// has coefficient zero there.
fn combine(p: &Inequality, q: &Inequality, var: usize) -> Result<Inequality, RationalError> {
    let a = p.coeffs[var];
    let b = q.coeffs[var].abs();
    let coeffs = p
        .coeffs
        .iter()
        .zip(&q.coeffs)
        .map(|(x, y)| x.checked_mul(&b)?.checked_add(&y.checked_mul(&a)?))
        .collect::<Result<Vec<_>, _>>()?;
    let rhs = p.rhs.checked_mul(&b)?.checked_add(&q.rhs.checked_mul(&a)?)?;
    let mut row = Inequality { coeffs, rhs };
    row.coeffs[var] = Rational::ZERO;
    normalize(&mut row)?;
    Ok(row)
}

/// Scales so the first nonzero coefficient has absolute value one.
fn normalize(row: &mut Inequality) -> Result<(), RationalError> {
    if let Some(lead) = row.coeffs.iter().find(|c| !c.is_zero()).map(Rational::abs) {
        for c in row.coeffs.iter_mut() {
            *c = c.checked_div(&lead)?;
        }
        row.rhs = row.rhs.checked_div(&lead)?;
    }
    Ok(())
}

/// Keeps only the tightest row per coefficient vector.
fn prune(rows: Vec<Inequality>) -> Result<Vec<Inequality>, RationalError> {
    let mut best: HashMap<Vec<Rational>, Rational> = HashMap::new();
    let mut order = Vec::new();
    for mut r in rows {
        normalize(&mut r)?;
        match best.get_mut(&r.coeffs) {
            Some(rhs) => *rhs = (*rhs).min(r.rhs),
            None => {
                order.push(r.coeffs.clone());
                best.insert(r.coeffs, r.rhs);
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|coeffs| {
            let rhs = best[&coeffs];
            Inequality { coeffs, rhs }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn simple_interval() {
        let mut s = System::new(1);
        s.add_ge(&[(0, Rational::ONE)], r(1, 3));
        s.add_le(&[(0, Rational::ONE)], r(1, 2));
        assert_eq!(s.feasibility().unwrap(), Feasibility::Feasible);
        s.add_le(&[(0, Rational::ONE)], r(1, 4));
        assert_eq!(s.feasibility().unwrap(), Feasibility::Infeasible { stage: 1, variable: Some(0) });
    }

    #[test]
    fn constant_contradiction_detected_before_elimination() {
        let mut s = System::new(2);
        s.add_le(&[], r(-1, 2));
        assert_eq!(s.feasibility().unwrap(), Feasibility::Infeasible { stage: 0, variable: None });
    }

    #[test]
    fn coupled_pair() {
        // x + y ≤ 1, x ≥ 3/4, y ≥ 1/4 feasible only at the corner
        let mut s = System::new(2);
        s.add_le(&[(0, Rational::ONE), (1, Rational::ONE)], Rational::ONE);
        s.add_ge(&[(0, Rational::ONE)], r(3, 4));
        s.add_ge(&[(1, Rational::ONE)], r(1, 4));
        assert_eq!(s.feasibility().unwrap(), Feasibility::Feasible);
        assert!(s.satisfied_by(&[r(3, 4), r(1, 4)]));
        s.add_ge(&[(1, Rational::ONE)], r(1, 3));
        assert!(matches!(s.feasibility().unwrap(), Feasibility::Infeasible { .. }));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert_eq!(System::new(3).feasibility().unwrap(), Feasibility::Feasible);
    }
}
