use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Dyadic;

/// Dense square matrix over the dyadic rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    data: Vec<Dyadic>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![Dyadic::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Dyadic::ONE;
        }
        m
    }

    pub fn from_ints(dim: usize, rows: &[i64]) -> Self {
        assert_eq!(rows.len(), dim * dim);
        Matrix {
            dim,
            data: rows.iter().map(|&v| Dyadic::int(v)).collect(),
        }
    }

    pub fn diagonal(entries: &[Dyadic]) -> Self {
        let mut m = Matrix::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self, k: Dyadic) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * k).collect(),
        }
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let d = self.dim * other.dim;
        let mut m = Matrix::zeros(d);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        m[(i * other.dim + k, j * other.dim + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diag(&self) -> Vec<Dyadic> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    /// `ab + ba`.
    pub fn anticomm(&self, other: &Matrix) -> Matrix {
        &(self * other) + &(other * self)
    }

    /// `ab - ba`.
    pub fn comm(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Dyadic;
    fn index(&self, (i, j): (usize, usize)) -> &Dyadic {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Dyadic {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)] + a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(Dyadic::int(-1))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_kron() {
        let x = Matrix::from_ints(2, &[0, 1, 1, 0]);
        let z = Matrix::from_ints(2, &[1, 0, 0, -1]);
        assert_eq!(&x * &x, Matrix::identity(2));
        assert!(x.anticomm(&z).is_zero());
        let xz = x.kron(&z);
        assert_eq!(xz.dim(), 4);
        assert_eq!(&xz * &xz, Matrix::identity(4));
        assert_eq!(xz[(0, 2)], Dyadic::ONE);
        assert_eq!(xz[(1, 3)], Dyadic::int(-1));
        assert!(z.is_diagonal() && !x.is_diagonal());
    }
}
