//! Square integer matrices, fraction-free elimination and the Berkowitz
//! characteristic polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;
use crate::tree::Tree;

/// Dense `n × n` matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(order: usize) -> Self {
        IntMatrix {
            order,
            entries: vec![BigInt::zero(); order * order],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let order = rows.len();
        let mut m = IntMatrix::zeros(order);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), order, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.entries[i * order + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.order + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entries as `f64`, row-major.
    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `den·M - num·I` for `λ = num/den`; same nullity as `M - λI`.
    fn shifted_scaled(&self, lambda: &BigRational) -> Vec<Vec<BigInt>> {
        let (num, den) = (lambda.numer(), lambda.denom());
        (0..self.order)
            .map(|i| {
                (0..self.order)
                    .map(|j| {
                        let v = self.get(i, j) * den;
                        if i == j {
                            v - num
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// `D - A` or, when `signless`, `D + A`, indexed by `label - 1`.
pub fn laplacian(tree: &Tree, signless: bool) -> IntMatrix {
    let n = tree.order();
    let mut m = IntMatrix::zeros(n);
    let off = if signless { BigInt::one() } else { BigInt::from(-1) };
    for v in tree.vertices() {
        m.set(v - 1, v - 1, BigInt::from(tree.degree(v)));
        for &w in tree.neighbors(v) {
            m.set(v - 1, w - 1, off.clone());
        }
    }
    m
}

/// Rank of an integer matrix (any shape) by Bareiss fraction-free
/// elimination. The pivot for each column is the first nonzero entry at or
/// below the current row; columns without one are skipped.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..nrows {
            let factor = rows[i][c].clone();
            for j in c + 1..ncols {
                let v = &pivot * &rows[i][j] - &factor * &rows[r][j];
                // Exact by Sylvester's identity.
                rows[i][j] = v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Exact nullity of `M - λI` over the rationals.
pub fn rational_nullity(m: &IntMatrix, lambda: &BigRational) -> usize {
    m.order() - bareiss_rank(m.shifted_scaled(lambda))
}

/// Basis of the rational null space of a matrix given by rows (any shape,
/// `ncols` columns), from its reduced row echelon form. One vector per free
/// column, in column order.
pub fn rational_nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let nrows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..nrows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); ncols];
            v[fc] = BigRational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            v
        })
        .collect()
}

/// `det(xI - M)` by Berkowitz's division-free algorithm.
pub fn char_poly(m: &IntMatrix) -> IntPolynomial {
    let n = m.order();
    if n == 0 {
        return IntPolynomial::one();
    }
    // Coefficients high degree first while building.
    let mut c: Vec<BigInt> = vec![BigInt::one(), -m.get(0, 0).clone()];
    for r in 1..n {
        // Toeplitz column: 1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S where A
        // is the leading r × r block, R the row r prefix and S the column r
        // prefix.
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-m.get(r, r).clone());
        let mut s: Vec<BigInt> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for k in 0..r {
            if k > 0 {
                s = (0..r)
                    .map(|i| (0..r).fold(BigInt::zero(), |acc, j| acc + m.get(i, j) * &s[j]))
                    .collect();
            }
            let rs = (0..r).fold(BigInt::zero(), |acc, j| acc + m.get(r, j) * &s[j]);
            t.push(-rs);
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j {
                    *slot += &t[i - j] * cj;
                }
            }
        }
        c = next;
    }
    c.reverse();
    IntPolynomial::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            laplacian(&Tree::path(2), false),
            IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]])
        );
        assert_eq!(
            laplacian(&Tree::path(2), true),
            IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])
        );
        let star = laplacian(&Tree::star(3), false);
        assert_eq!(
            star,
            IntMatrix::from_rows(&[
                vec![3, -1, -1, -1],
                vec![-1, 1, 0, 0],
                vec![-1, 0, 1, 0],
                vec![-1, 0, 0, 1],
            ])
        );
        assert!(star.is_symmetric());
    }

    #[test]
    fn nullity_examples() {
        let one = rat(1, 1);
        assert_eq!(rational_nullity(&laplacian(&Tree::star(3), false), &one), 2);
        assert_eq!(rational_nullity(&laplacian(&Tree::path(3), false), &one), 1);
        assert_eq!(rational_nullity(&laplacian(&Tree::path(4), false), &one), 0);
        assert_eq!(rational_nullity(&laplacian(&Tree::path(5), false), &rat(0, 1)), 1);
        // λ = 3/2 is not an eigenvalue of any small path
        assert_eq!(rational_nullity(&laplacian(&Tree::path(4), false), &rat(3, 2)), 0);
    }

    #[test]
    fn bareiss_rank_handles_zero_columns() {
        let rows = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(0)],
        ];
        assert_eq!(bareiss_rank(rows), 1);
        assert_eq!(bareiss_rank(Vec::new()), 0);
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&laplacian(&Tree::path(2), false)),
            IntPolynomial::from_i64(&[0, -2, 1])
        );
        assert_eq!(
            char_poly(&laplacian(&Tree::star(3), false)),
            IntPolynomial::from_i64(&[0, -4, 9, -6, 1])
        );
        assert_eq!(char_poly(&IntMatrix::zeros(1)), IntPolynomial::x());
        let general = IntMatrix::from_rows(&[vec![2, 1, 0], vec![3, -1, 4], vec![0, 5, 1]]);
        // det(xI - A) expanded by hand: x^3 - 2x^2 - 24x + 21... checked below
        // against integer evaluations of the determinant.
        let p = char_poly(&general);
        for x in -3..=3i64 {
            let a = |i: usize, j: usize| -> i64 {
                let base = [[2, 1, 0], [3, -1, 4], [0, 5, 1]][i][j];
                if i == j {
                    x - base
                } else {
                    -base
                }
            };
            let det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
            assert_eq!(p.eval_i64(x), BigInt::from(det), "x = {x}");
        }
    }

    #[test]
    fn nullspace_of_p3_at_one() {
        let l = laplacian(&Tree::path(3), false);
        let rows: Vec<Vec<BigRational>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let v = BigRational::from_integer(l.get(i, j).clone());
                        if i == j {
                            v - rat(1, 1)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let basis = rational_nullspace(&rows, 3);
        assert_eq!(basis, vec![vec![rat(-1, 1), rat(0, 1), rat(1, 1)]]);
    }
}
