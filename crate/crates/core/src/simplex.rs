//! Dense primal simplex for the packing LPs the oracle produces:
//! maximize Σx subject to Ax ≤ b, x ≥ 0, where A is a 0/1 incidence
//! matrix (rows = sensors, columns = covers) and b ≥ 0.
//!
//! Sized for oracle duty (tens of rows, up to ~10^5 columns), not for
//! general LP work: the origin is always feasible, so no phase 1; the
//! objective is all ones; entering and leaving variables follow Bland's
//! rule, which rules out cycling at some cost in pivot count.

const EPS: f64 = 1e-9;
/// Slack for ratio-test ties; ratios at this distance count as equal and
/// fall back to the lowest-basis-variable rule.
const TIE_EPS: f64 = 1e-12;

/// Maximize `sum(x)` over `Ax <= b, x >= 0`. `columns[p]` lists the rows
/// where column `p` has a 1. Returns the objective and one optimal `x`.
///
/// Panics on structurally broken input (empty columns would make the LP
/// unbounded; the caller guarantees non-empty covers).
pub(crate) fn maximize_unit_objective(
    columns: &[Vec<usize>],
    n_rows: usize,
    b: &[f64],
) -> (f64, Vec<f64>) {
    assert_eq!(b.len(), n_rows);
    assert!(!columns.is_empty(), "LP needs at least one column");
    let p = columns.len();
    let width = p + n_rows; // structural variables then slacks

    // row-major tableau; slack basis start
    let mut t = vec![0.0f64; n_rows * width];
    for (pc, col) in columns.iter().enumerate() {
        assert!(!col.is_empty(), "empty column makes the LP unbounded");
        for &r in col {
            assert!(r < n_rows, "row index {r} out of range");
            t[r * width + pc] = 1.0;
        }
    }
    for r in 0..n_rows {
        t[r * width + p + r] = 1.0;
    }
    let mut rhs = b.to_vec();
    let mut basis: Vec<usize> = (p..p + n_rows).collect();
    // reduced costs for the minimization form (c = -1 on structurals)
    let mut cost = vec![0.0f64; width];
    for c in cost.iter_mut().take(p) {
        *c = -1.0;
    }

    // Bland's rule terminates, but cap the pivots to turn a numerical
    // surprise into a loud failure instead of a hang.
    let max_pivots = 100 * width + 10_000;
    for _ in 0..max_pivots {
        // entering: lowest-index variable with a negative reduced cost
        let Some(e) = (0..width).find(|&j| cost[j] < -EPS) else {
            let mut x = vec![0.0f64; p];
            for (r, &bv) in basis.iter().enumerate() {
                if bv < p {
                    x[bv] = rhs[r].max(0.0);
                }
            }
            let objective = x.iter().sum();
            return (objective, x);
        };

        // leaving: minimum ratio, ties to the lowest basis variable
        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for r in 0..n_rows {
            let a = t[r * width + e];
            if a > EPS {
                let ratio = rhs[r] / a;
                let better = match leave {
                    None => true,
                    Some(l) => {
                        ratio < best_ratio - TIE_EPS
                            || ((ratio - best_ratio).abs() <= TIE_EPS && basis[r] < basis[l])
                    }
                };
                if better {
                    leave = Some(r);
                    best_ratio = best_ratio.min(ratio);
                }
            }
        }
        let l = leave.expect("packing LP with non-empty columns is bounded");

        // pivot on (l, e)
        let piv = t[l * width + e];
        for j in 0..width {
            t[l * width + j] /= piv;
        }
        rhs[l] /= piv;
        for r in 0..n_rows {
            if r == l {
                continue;
            }
            let f = t[r * width + e];
            if f != 0.0 {
                for j in 0..width {
                    t[r * width + j] -= f * t[l * width + j];
                }
                rhs[r] -= f * rhs[l];
            }
        }
        let f = cost[e];
        if f != 0.0 {
            for j in 0..width {
                cost[j] -= f * t[l * width + j];
            }
        }
        basis[l] = e;
    }
    panic!("simplex failed to converge within {max_pivots} pivots");
}
