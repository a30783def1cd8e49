use rayon::prelude::*;

use super::class::EqClass;
use crate::combinatorics::{GrassmannianShape, Partition, PivotSubset};
use crate::error::Result;
use crate::poly::Polynomial;

/// Fraction-free (Bareiss) determinant. Every division is exact.
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Polynomial {
    let size = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == size), "square matrix");
    if size == 0 {
        return Polynomial::one();
    }
    let mut m = matrix.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for p in 0..size - 1 {
        if m[p][p].is_zero() {
            match (p + 1..size).find(|&r| !m[r][p].is_zero()) {
                Some(r) => {
                    m.swap(p, r);
                    negate = !negate;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in p + 1..size {
            for j in p + 1..size {
                let num = &(&m[i][j] * &m[p][p]) - &(&m[i][p] * &m[p][j]);
                m[i][j] = num.exact_divide(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = m[p][p].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Coefficients of `∏_{j∉J}(1 + t_j) / ∏_{a≤m}(1 + t_a)` in degrees `0..=top`.
fn chern_series(at: &PivotSubset, shape: &GrassmannianShape, m: usize, top: usize) -> Vec<Polynomial> {
    let mut series = vec![Polynomial::zero(); top + 1];
    series[0] = Polynomial::one();
    for j in at.complement(shape) {
        let t = Polynomial::t(j as u32);
        for d in (1..=top).rev() {
            let shifted = &t * &series[d - 1];
            series[d] += shifted;
        }
    }
    for a in 1..=m {
        // dividing by (1 + t_a): s'_d = s_d - t_a s'_{d-1}
        let t = Polynomial::t(a as u32);
        for d in 1..=top {
            let shifted = &t * &series[d - 1];
            series[d] -= shifted;
        }
    }
    series
}

/// `det(c_{λ_i+j-i}(i))` at `p_J`, where `c(i) = c(Q - E_{n-k-λ_i+i})`.
pub fn kempf_laksov_restriction(lambda: &Partition, at: &PivotSubset, shape: &GrassmannianShape) -> Polynomial {
    let k = shape.k();
    let r = shape.cols();
    let top = lambda.first() + k - 1;
    let matrix: Vec<Vec<Polynomial>> = (1..=k)
        .map(|i| {
            let series = chern_series(at, shape, r - lambda.part(i) + i, top);
            (1..=k)
                .map(|j| {
                    let deg = (lambda.part(i) + j) as isize - i as isize;
                    if deg < 0 {
                        Polynomial::zero()
                    } else {
                        series[deg as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&matrix)
}

/// The degeneracy-locus class of `λ`, evaluated pointwise.
pub fn kempf_laksov_class(lambda: &Partition, shape: &GrassmannianShape) -> Result<EqClass> {
    shape.check_fits(lambda)?;
    let values: Vec<(PivotSubset, Polynomial)> = shape
        .subsets()
        .into_par_iter()
        .map(|s| {
            let v = kempf_laksov_restriction(lambda, &s, shape);
            (s, v)
        })
        .collect();
    EqClass::from_restrictions(*shape, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::class::schubert_class;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn leibniz(m: &[Vec<Polynomial>]) -> Polynomial {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], false)];
            }
            let mut out = Vec::new();
            for (perm, odd) in perms(n - 1) {
                for pos in 0..=perm.len() {
                    let mut q = perm.clone();
                    q.insert(pos, n - 1);
                    // inserting at pos moves the new largest past (len - pos) entries
                    let flips = (perm.len() - pos) % 2 == 1;
                    out.push((q, odd ^ flips));
                }
            }
            out
        }
        perms(m.len())
            .into_iter()
            .map(|(q, odd)| {
                let term: Polynomial = q.iter().enumerate().map(|(i, &j)| m[i][j].clone()).product();
                if odd {
                    -term
                } else {
                    term
                }
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let entries = ["t1", "t2 - t1", "0", "3", "t1*t3", "-t2", "t3 + 1", "0", "t1^2", "2*t2", "t3", "t1 - 1", "0", "0", "t2", "5"];
        for size in 0..=4 {
            let m: Vec<Vec<Polynomial>> = (0..size)
                .map(|i| (0..size).map(|j| p(entries[(i * 7 + j * 3) % entries.len()])).collect())
                .collect();
            assert_eq!(determinant(&m), leibniz(&m), "size {size}");
        }
        // zero leading pivot forces a swap
        let m = vec![vec![p("0"), p("t1")], vec![p("t2"), p("1")]];
        assert_eq!(determinant(&m), p("-t1*t2"));
    }

    #[test]
    fn small_cases() {
        let sh = GrassmannianShape::new(2, 1).unwrap();
        let c = kempf_laksov_class(&"1".parse().unwrap(), &sh).unwrap();
        assert_eq!(c.restriction(&PivotSubset::new(vec![1], &sh).unwrap()), p("t2 - t1"));
        assert!(c.restriction(&PivotSubset::new(vec![2], &sh).unwrap()).is_zero());
        let sh = GrassmannianShape::new(5, 2).unwrap();
        assert_eq!(kempf_laksov_class(&Partition::empty(), &sh).unwrap(), EqClass::one(sh));
        assert!(kempf_laksov_class(&"4".parse().unwrap(), &sh).is_err());
    }

    #[test]
    fn agrees_with_schubert_classes() {
        for (n, k) in [(4, 2), (5, 2), (5, 3), (4, 1), (6, 3)] {
            let sh = GrassmannianShape::new(n, k).unwrap();
            for lam in sh.partitions() {
                assert_eq!(
                    kempf_laksov_class(&lam, &sh).unwrap(),
                    schubert_class(&lam, &sh).unwrap(),
                    "{lam} on {sh}"
                );
            }
        }
    }
}
