//! Closed existential Presburger sentences: value terms substituted by
//! naturals, integer quantifiers decided by bounded search.

use std::collections::HashMap;

use super::{LogicError, Matrix, Term};

/// Largest number of candidate assignments a quantifier block may need.
pub const SEARCH_BUDGET: u128 = 5_000_000;

/// `const + Σ coef·var` over unbound integer variables.
#[derive(Default)]
struct Linear {
    constant: i128,
    coefs: HashMap<String, i128>,
}

fn linear(t: &Term, vals: &[u64], env: &HashMap<String, u64>) -> Linear {
    match t {
        Term::Val(i) => Linear { constant: vals[*i] as i128, ..Default::default() },
        Term::Int(n) => Linear { constant: *n as i128, ..Default::default() },
        Term::Var(x) => match env.get(x) {
            Some(&v) => Linear { constant: v as i128, ..Default::default() },
            None => Linear { constant: 0, coefs: HashMap::from([(x.clone(), 1)]) },
        },
        Term::Add(a, b) => {
            let mut l = linear(a, vals, env);
            let r = linear(b, vals, env);
            l.constant += r.constant;
            for (x, c) in r.coefs {
                *l.coefs.entry(x).or_default() += c;
            }
            l
        }
        Term::Mul(k, a) => {
            let mut l = linear(a, vals, env);
            l.constant *= *k as i128;
            l.coefs.values_mut().for_each(|c| *c *= *k as i128);
            l
        }
    }
}

fn value(t: &Term, vals: &[u64], env: &HashMap<String, u64>) -> i128 {
    linear(t, vals, env).constant
}

/// Atoms, largest magnitude and number of quantified variables of a block.
fn measure(m: &Matrix, vals: &[u64], env: &HashMap<String, u64>, acc: &mut (u128, u128, usize)) {
    match m {
        Matrix::True | Matrix::False => {}
        Matrix::Cmp(a, _, b) => {
            acc.0 += 1;
            let (l, r) = (linear(a, vals, env), linear(b, vals, env));
            let mut big = (l.constant - r.constant).unsigned_abs() + 1;
            for c in l.coefs.values().chain(r.coefs.values()) {
                big = big.max(c.unsigned_abs());
            }
            acc.1 = acc.1.max(big);
        }
        Matrix::Not(x) => measure(x, vals, env, acc),
        Matrix::And(x, y) | Matrix::Or(x, y) => {
            measure(x, vals, env, acc);
            measure(y, vals, env, acc);
        }
        Matrix::Exists(_, x) => {
            acc.2 += 1;
            measure(x, vals, env, acc);
        }
    }
}

/// The small-solution bound `n·(m·a)^(2m+1)` for `m` atoms over `n`
/// variables (including one slack per atom) with magnitudes at most `a`.
fn small_solution_bound(atoms: u128, magnitude: u128, vars: usize) -> u128 {
    let base = atoms.max(1).saturating_mul(magnitude.max(1));
    let exp = (2 * atoms + 1).min(u32::MAX as u128) as u32;
    let n = (vars as u128).saturating_add(atoms);
    base.checked_pow(exp).map_or(u128::MAX, |p| p.saturating_mul(n))
}

/// With only `x` free, every atom `c·x + e ⋈ 0` is constant once
/// `x > |e| / |c|`, so the body's truth is constant past the largest ratio.
fn single_variable_bound(x: &str, m: &Matrix, vals: &[u64], env: &HashMap<String, u64>) -> u128 {
    match m {
        Matrix::True | Matrix::False | Matrix::Exists(..) => 0,
        Matrix::Cmp(a, _, b) => {
            let (l, r) = (linear(a, vals, env), linear(b, vals, env));
            let c = l.coefs.get(x).copied().unwrap_or(0) - r.coefs.get(x).copied().unwrap_or(0);
            let e = (l.constant - r.constant).unsigned_abs();
            if c == 0 {
                0
            } else {
                e / c.unsigned_abs() + 1
            }
        }
        Matrix::Not(y) => single_variable_bound(x, y, vals, env),
        Matrix::And(y, z) | Matrix::Or(y, z) => {
            single_variable_bound(x, y, vals, env).max(single_variable_bound(x, z, vals, env))
        }
    }
}

fn eval(m: &Matrix, vals: &[u64], env: &mut HashMap<String, u64>) -> Result<bool, LogicError> {
    Ok(match m {
        Matrix::True => true,
        Matrix::False => false,
        Matrix::Cmp(a, op, b) => op.holds(value(a, vals, env), value(b, vals, env)),
        Matrix::Not(x) => !eval(x, vals, env)?,
        Matrix::And(x, y) => eval(x, vals, env)? && eval(y, vals, env)?,
        Matrix::Or(x, y) => eval(x, vals, env)? || eval(y, vals, env)?,
        Matrix::Exists(x, body) => {
            let mut acc = (0, 0, 1);
            measure(body, vals, env, &mut acc);
            let bound = if acc.2 == 1 {
                single_variable_bound(x, body, vals, env)
            } else {
                small_solution_bound(acc.0, acc.1, acc.2)
            };
            let work = (bound.saturating_add(1)).checked_pow(acc.2 as u32).unwrap_or(u128::MAX);
            if work > SEARCH_BUDGET {
                return Err(LogicError::BoundOverflow { bound, vars: acc.2 });
            }
            let saved = env.get(x).copied();
            let mut found = false;
            for n in 0..=bound as u64 {
                env.insert(x.clone(), n);
                if eval(body, vals, env)? {
                    found = true;
                    break;
                }
            }
            match saved {
                Some(v) => env.insert(x.clone(), v),
                None => env.remove(x),
            };
            found
        }
    })
}

/// Truth of `matrix` with value term `i` set to `vals[i]`.
///
/// Every integer quantifier block is searched up to the small-solution
/// bound of its linear system, which makes the answer exact; blocks whose
/// search space exceeds [`SEARCH_BUDGET`] are reported as
/// [`LogicError::BoundOverflow`].
pub fn decide_presburger(matrix: &Matrix, vals: &[u64]) -> Result<bool, LogicError> {
    eval(matrix, vals, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    fn decide(src: &str, vals: &[u64]) -> Result<bool, LogicError> {
        let f = parse(src).unwrap();
        decide_presburger(&f.matrix, vals)
    }

    const P3: &str = "exists f in R(A) . exists w . exists g in R(B) . exists h in R(C) . ";

    #[test]
    fn examples() {
        assert!(decide("exists f in R(A) . exists w . exists g in R(B) . val(A,f,w) <= val(B,g,w)", &[1, 2]).unwrap());
        assert!(!decide("exists f in R(A) . exists w . exists n in N . val(A,f,w) = 2*n", &[3]).unwrap());
        assert!(decide("exists f in R(A) . exists w . exists n in N . val(A,f,w) = 2*n", &[4]).unwrap());
        let sum = format!("{P3}val(A,f,w) = val(B,g,w) + val(C,h,w)");
        assert!(decide(&sum, &[5, 2, 3]).unwrap());
        assert!(!decide(&sum, &[5, 2, 2]).unwrap());
    }

    #[test]
    fn single_variable_blocks_are_exact() {
        let f = "exists f in R(A) . exists w . exists n in N . 3*n = val(A,f,w) + 1 && n < 10 && !(n = 0)";
        assert!(!decide(f, &[4]).unwrap());
        assert!(decide(f, &[5]).unwrap());
        assert!(!decide(f, &[29]).unwrap());
        let g = "exists f in R(A) . exists w . (exists n in N . 2*n = val(A,f,w)) && (exists k in N . 3*k = val(A,f,w))";
        assert!(decide(g, &[6]).unwrap());
        assert!(!decide(g, &[4]).unwrap());
    }

    #[test]
    fn large_blocks_overflow() {
        let f = "exists f in R(A) . exists w . exists n in N . exists k in N . n + k = val(A,f,w) && 3*n = k + 1";
        assert!(matches!(decide(f, &[5]), Err(LogicError::BoundOverflow { vars: 2, .. })));
    }

    #[test]
    fn bound_is_monotone() {
        assert!(small_solution_bound(1, 3, 1) < small_solution_bound(2, 3, 1));
        assert_eq!(small_solution_bound(1, 3, 1), 2 * 27);
    }
}
