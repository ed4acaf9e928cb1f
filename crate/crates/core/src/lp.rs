//! Exact feasibility for small linear systems over the rationals.
//!
//! Phase-one simplex on a dense tableau with Bland's rule, which cannot cycle.
//! Problems handled here are desk-sized (a dozen rows, a few dozen columns).

use num_traits::{Signed, Zero};

use crate::rational::Q;

/// Finds `x >= 0` with `a x = b`, or returns `None` when the system is infeasible.
///
/// Rows of `a` must all have the same length. Rows with negative right-hand
/// side are negated internally.
pub fn solve_standard_form(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Q::zero(); n]);
    }
    let width = n + m + 1; // original columns, artificials, rhs
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = rhs.is_negative();
        let mut r = vec![Q::zero(); width];
        for (j, v) in row.iter().enumerate() {
            r[j] = if flip { -v.clone() } else { v.clone() };
        }
        r[n + i] = Q::from_integer(1.into());
        r[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![Q::zero(); width];
    for r in &t {
        for j in 0..n {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }

    loop {
        let entering = (0..n + m).find(|&j| cost[j].is_negative());
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, Q)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[e].is_positive() {
                let ratio = &r[width - 1] / &r[e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so an entering column always has a pivot row.
        let (p, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, p, e);
        basis[p] = e;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], cost: &mut [Q], p: usize, e: usize) {
    let pv = t[p][e].clone();
    for v in t[p].iter_mut() {
        *v /= &pv;
    }
    let prow = t[p].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == p || r[e].is_zero() {
            continue;
        }
        let f = r[e].clone();
        for (v, pvj) in r.iter_mut().zip(&prow) {
            if !pvj.is_zero() {
                *v -= &f * pvj;
            }
        }
    }
    if !cost[e].is_zero() {
        let f = cost[e].clone();
        for (v, pvj) in cost.iter_mut().zip(&prow) {
            if !pvj.is_zero() {
                *v -= &f * pvj;
            }
        }
    }
}

/// Looks for convex weights `lambda` over `generators` with
/// `sum_j lambda_j g_j >= target` componentwise. Returns the weights when found.
pub fn dominating_mixture(target: &[Q], generators: &[Vec<Q>]) -> Option<Vec<Q>> {
    let k = generators.len();
    if k == 0 {
        return None;
    }
    let d = target.len();
    // Columns: lambda_1..lambda_k, surplus_1..surplus_d.
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row = vec![Q::zero(); k + d];
        for (j, g) in generators.iter().enumerate() {
            row[j] = g[i].clone();
        }
        row[k + i] = -Q::from_integer(1.into());
        a.push(row);
        b.push(target[i].clone());
    }
    let mut ones = vec![Q::zero(); k + d];
    for v in ones.iter_mut().take(k) {
        *v = Q::from_integer(1.into());
    }
    a.push(ones);
    b.push(Q::from_integer(1.into()));
    solve_standard_form(&a, &b).map(|mut x| {
        x.truncate(k);
        x
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(xs: &[(i64, i64)]) -> Vec<Q> {
        xs.iter().map(|&(n, d)| frac(n, d)).collect()
    }

    #[test]
    fn simple_feasible_system() {
        // x + y = 1, x - y = 0  => x = y = 1/2
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let x = solve_standard_form(&a, &[int(1), int(0)]).unwrap();
        assert_eq!(x, vec![frac(1, 2), frac(1, 2)]);
    }

    #[test]
    fn simple_infeasible_system() {
        // x + y = 1, x + y = 2
        let a = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(solve_standard_form(&a, &[int(1), int(2)]).is_none());
    }

    #[test]
    fn negative_rhs_is_normalised() {
        // -x = -3
        let x = solve_standard_form(&[vec![int(-1)]], &[int(-3)]).unwrap();
        assert_eq!(x, vec![int(3)]);
    }

    #[test]
    fn midpoint_of_unit_vectors_is_dominated() {
        let gens = vec![v(&[(1, 1), (0, 1)]), v(&[(0, 1), (1, 1)])];
        let lambda = dominating_mixture(&v(&[(1, 2), (1, 2)]), &gens).unwrap();
        assert_eq!(lambda, vec![frac(1, 2), frac(1, 2)]);
        assert!(dominating_mixture(&v(&[(3, 5), (1, 2)]), &gens).is_none());
    }

    #[test]
    fn degenerate_duplicates_do_not_cycle() {
        let g = v(&[(1, 3), (1, 3), (1, 3)]);
        let gens = vec![g.clone(), g.clone(), g.clone(), v(&[(0, 1), (0, 1), (1, 1)])];
        assert!(dominating_mixture(&g, &gens).is_some());
        assert!(dominating_mixture(&v(&[(1, 4), (1, 4), (1, 2)]), &gens).is_some());
        assert!(dominating_mixture(&v(&[(1, 3), (1, 3), (1, 2)]), &gens).is_none());
        assert!(dominating_mixture(&v(&[(1, 2), (1, 3), (1, 3)]), &gens).is_none());
    }
}
