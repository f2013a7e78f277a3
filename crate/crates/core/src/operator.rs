//! Matrix entries and finite sections of (-Δ)^α on the half-line.
//!
//! For α > 0 the entries are
//! (-1)^{m+n} [C(2α, α+m-n) - C(2α, α+m+n)] with C the generalized binomial.
//! With t(k) = (-1)^k C(2α, α+k), which is even in k, this is the
//! Toeplitz-plus-Hankel form t(|m-n|) - t(m+n), so a section of size N only
//! needs t(0), ..., t(2N).

use std::f64::consts::PI;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::format::fmt17;
use crate::quadrature::{integrate, ChebPoint, Integrand, DEFAULT_TOL};
use crate::special::{digamma, gen_binomial};

/// Classification of an exponent α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// 0 < α < 3/2
    Subcritical,
    /// α ≥ 3/2
    Critical,
    /// α = -1/2 or α = -1
    SpecialNegative,
}

/// A validated exponent: α > 0, α = -1/2 or α = -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(alpha: f64) -> Result<Self> {
        if (alpha > 0.0 && alpha.is_finite()) || alpha == -0.5 || alpha == -1.0 {
            Ok(Exponent(alpha))
        } else {
            Err(Error::UnsupportedExponent(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn regime(self) -> Regime {
        match self.0 {
            a if a < 0.0 => Regime::SpecialNegative,
            a if a < 1.5 => Regime::Subcritical,
            _ => Regime::Critical,
        }
    }
}

/// How a finite section was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    PowerAlpha,
    PowerAlphaMinusPotential,
    ReflectedFourAlphaMinusPower,
}

/// Dense square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at zero-based (row, col).
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.data[row * self.n + col] = v;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Maximum absolute row sum, an upper bound on the spectral norm of a symmetric matrix.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Matrix product; used for checks on small sizes.
    pub fn matmul(&self, other: &SquareMatrix) -> SquareMatrix {
        let n = self.n;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Leading `k`×`k` block.
    pub fn leading_block(&self, k: usize) -> SquareMatrix {
        let k = k.min(self.n);
        let mut out = SquareMatrix::zeros(k);
        for i in 0..k {
            out.data[i * k..(i + 1) * k].copy_from_slice(&self.row(i)[..k]);
        }
        out
    }

    /// Row-major CSV, one matrix row per record, 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        for i in 0..self.n {
            wtr.write_record(self.row(i).iter().map(|&v| fmt17(v)))?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(r);
        let mut data = Vec::new();
        let mut rows = 0;
        for rec in rdr.records() {
            let rec = rec?;
            for field in rec.iter() {
                let v: f64 = field
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("not a number: {field:?}")))?;
                data.push(v);
            }
            rows += 1;
        }
        SquareMatrix::from_row_major(rows, data)
    }

    /// Little-endian layout: u64 N followed by N² f64 values row-major.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&(self.n as u64).to_le_bytes())?;
        for v in &self.data {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut head = [0u8; 8];
        r.read_exact(&mut head)?;
        let n = u64::from_le_bytes(head) as usize;
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        if bytes.len() != n * n * 8 {
            return Err(Error::InvalidInput(format!(
                "binary matrix of size {n} needs {} payload bytes, found {}",
                n * n * 8,
                bytes.len()
            )));
        }
        let data = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        SquareMatrix::from_row_major(n, data)
    }
}

/// A finite section of (-Δ)^α, possibly shifted or perturbed.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    alpha: f64,
    provenance: Provenance,
    matrix: SquareMatrix,
}

impl TruncatedOperator {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.matrix
    }

    /// Zero-based entry.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix.get(row, col)
    }

    /// Subtracts diag(v_1, ..., v_N); `potential(n)` is called with one-based n.
    pub fn subtract_potential(mut self, potential: impl Fn(u64) -> f64) -> Self {
        for i in 0..self.size() {
            let v = self.matrix.get(i, i) - potential(i as u64 + 1);
            self.matrix.set(i, i, v);
        }
        if self.provenance == Provenance::PowerAlpha {
            self.provenance = Provenance::PowerAlphaMinusPotential;
        }
        self
    }
}

/// t(k) = (-1)^k C(2α, α+k).
fn toeplitz_symbol(alpha: f64, k: u64) -> f64 {
    let b = gen_binomial(2.0 * alpha, alpha + k as f64);
    if k.is_multiple_of(2) {
        b
    } else {
        -b
    }
}

fn check_indices(m: u64, n: u64) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(format!("indices start at 1, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// Entry (m, n) of (-Δ)^α, indices starting at 1.
pub fn entry(alpha: f64, m: u64, n: u64) -> Result<f64> {
    let a = Exponent::new(alpha)?;
    check_indices(m, n)?;
    Ok(entry_unchecked(a.value(), m, n))
}

fn entry_unchecked(alpha: f64, m: u64, n: u64) -> f64 {
    if alpha == -1.0 {
        return m.min(n) as f64;
    }
    if alpha == -0.5 {
        return negative_half_entry(m, n);
    }
    toeplitz_symbol(alpha, m.abs_diff(n)) - toeplitz_symbol(alpha, m + n)
}

/// (1/π)[ψ(1/2 + m + n) - ψ(1/2 + |m - n|)].
fn negative_half_entry(m: u64, n: u64) -> f64 {
    let hi = digamma(0.5 + (m + n) as f64).expect("positive argument");
    let lo = digamma(0.5 + m.abs_diff(n) as f64).expect("positive argument");
    (hi - lo) / PI
}

/// N×N leading section of (-Δ)^α.
pub fn assemble(alpha: f64, size: usize) -> Result<TruncatedOperator> {
    let a = Exponent::new(alpha)?;
    if size == 0 {
        return Err(Error::InvalidInput("section size must be at least 1".into()));
    }
    let alpha = a.value();
    let mut matrix = SquareMatrix::zeros(size);
    if alpha > 0.0 {
        let t: Vec<f64> = (0..=2 * size as u64).map(|k| toeplitz_symbol(alpha, k)).collect();
        for i in 0..size {
            for j in 0..=i {
                // one-based m = i+1, n = j+1
                let v = t[i - j] - t[i + j + 2];
                matrix.set(i, j, v);
                matrix.set(j, i, v);
            }
        }
    } else {
        for i in 0..size {
            for j in 0..=i {
                let v = entry_unchecked(alpha, i as u64 + 1, j as u64 + 1);
                matrix.set(i, j, v);
                matrix.set(j, i, v);
            }
        }
    }
    Ok(TruncatedOperator {
        alpha,
        provenance: Provenance::PowerAlpha,
        matrix,
    })
}

/// 4^α I - (section of (-Δ)^α), α > 0.
pub fn assemble_reflected(alpha: f64, size: usize) -> Result<TruncatedOperator> {
    if !(alpha > 0.0) {
        return Err(Error::UnsupportedExponent(alpha));
    }
    let mut op = assemble(alpha, size)?;
    let top = 4f64.powf(alpha);
    for i in 0..size {
        for j in 0..size {
            let v = op.matrix.get(i, j);
            op.matrix.set(i, j, if i == j { top - v } else { -v });
        }
    }
    op.provenance = Provenance::ReflectedFourAlphaMinusPower;
    Ok(op)
}

/// Entry (m, n) from its integral representation
/// (2^{α+1}/π) ∫ (1-x)^α U_{m-1}(x) U_{n-1}(x) √(1-x²) dx, valid for α > -3/2.
pub fn entry_oracle(alpha: f64, m: u64, n: u64) -> Result<f64> {
    entry_oracle_tol(alpha, m, n, DEFAULT_TOL)
}

/// `entry_oracle` with an explicit absolute tolerance on the returned value.
pub fn entry_oracle_tol(alpha: f64, m: u64, n: u64, tol: f64) -> Result<f64> {
    check_indices(m, n)?;
    if !(alpha > -1.5) {
        return Err(Error::domain(
            "entry_oracle",
            alpha,
            "the integral converges only for alpha > -3/2",
        ));
    }
    let scale = 2f64.powf(alpha + 1.0) / PI;
    let ig = Integrand::new(move |p: &ChebPoint| p.chebyshev_u(m - 1) * p.chebyshev_u(n - 1))
        .with_endpoint_exponent(alpha)
        .with_frequency((m + n) as f64);
    Ok(scale * integrate(&ig, tol / scale)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponent_classification() {
        assert_eq!(Exponent::new(1.0).unwrap().regime(), Regime::Subcritical);
        assert_eq!(Exponent::new(1.5).unwrap().regime(), Regime::Critical);
        assert_eq!(Exponent::new(-0.5).unwrap().regime(), Regime::SpecialNegative);
        assert_eq!(Exponent::new(-1.0).unwrap().regime(), Regime::SpecialNegative);
        assert!(Exponent::new(0.0).is_err());
        assert!(Exponent::new(-0.3).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
    }

    #[test]
    fn laplacian_entries() {
        assert_eq!(entry(1.0, 1, 1).unwrap(), 2.0);
        assert_eq!(entry(1.0, 1, 2).unwrap(), -1.0);
        assert_eq!(entry(1.0, 1, 3).unwrap(), 0.0);
        assert_eq!(entry(2.0, 1, 1).unwrap(), 5.0);
        assert_eq!(entry(-1.0, 3, 7).unwrap(), 3.0);
        assert!(entry(-0.25, 1, 1).is_err());
        assert!(entry(1.0, 0, 1).is_err());
    }

    #[test]
    fn fractional_entries() {
        assert_relative_eq!(entry(0.5, 1, 1).unwrap(), 1.358_122_181_050_840_2, max_relative = 1e-13);
        assert_relative_eq!(
            entry(1.5, 2, 5).unwrap(),
            0.031_498_240_237_491_82,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            entry(0.75, 3, 40).unwrap(),
            -1.126_042_427_658_347_7e-5,
            max_relative = 1e-11
        );
        assert_relative_eq!(entry(2.5, 7, 9).unwrap(), 2.586_901_749_177_147, max_relative = 1e-12);
    }

    #[test]
    fn negative_half_entries() {
        assert_relative_eq!(
            entry(-0.5, 1, 1).unwrap(),
            0.848_826_363_156_775_1,
            max_relative = 1e-13
        );
        assert_relative_eq!(entry(-0.5, 2, 3).unwrap(), 0.501_211_757_292_572, max_relative = 1e-13);
        assert_relative_eq!(
            entry(-0.5, 5, 1).unwrap(),
            0.128_610_055_023_753_8,
            max_relative = 1e-12
        );
    }

    #[test]
    fn assembled_sections() {
        let a = assemble(1.0, 3).unwrap();
        assert_eq!(
            a.matrix().as_slice(),
            &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]
        );
        let b = assemble(2.0, 2).unwrap();
        assert_eq!(b.matrix().as_slice(), &[5.0, -4.0, -4.0, 6.0]);
        assert_eq!(assemble(1.0, 1).unwrap().matrix().as_slice(), &[2.0]);
        let r = assemble_reflected(1.0, 2).unwrap();
        assert_eq!(r.matrix().as_slice(), &[2.0, 1.0, 1.0, 2.0]);
        assert_eq!(r.provenance(), Provenance::ReflectedFourAlphaMinusPower);
        let r = assemble_reflected(2.0, 2).unwrap();
        assert_eq!(r.matrix().as_slice(), &[11.0, 4.0, 4.0, 10.0]);
        assert!(assemble(0.7, 40).unwrap().matrix().is_symmetric());
    }

    #[test]
    fn assemble_matches_entry() {
        for &alpha in &[0.3, 1.25, 2.5, -0.5] {
            let op = assemble(alpha, 12).unwrap();
            for i in 0..12 {
                for j in 0..12 {
                    let e = entry(alpha, i as u64 + 1, j as u64 + 1).unwrap();
                    assert!((op.get(i, j) - e).abs() <= 1e-15 * e.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        assert!((entry_oracle(1.0, 1, 2).unwrap() + 1.0).abs() < 1e-10);
        for &(a, m, n) in &[(0.5, 1, 1), (1.5, 2, 5), (0.25, 7, 3)] {
            let o = entry_oracle(a, m, n).unwrap();
            assert!((o - entry(a, m, n).unwrap()).abs() < 1e-10);
        }
        // α = -1/2 through the integral
        let o = entry_oracle(-0.5, 2, 3).unwrap();
        assert!((o - entry(-0.5, 2, 3).unwrap()).abs() < 1e-10);
        let o = entry_oracle(-1.0, 3, 7).unwrap();
        assert!((o - 3.0).abs() < 1e-10);
    }

    #[test]
    fn csv_and_binary_round_trip() {
        let m = assemble(0.6, 7).unwrap().into_matrix();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        assert_eq!(SquareMatrix::read_csv(&buf[..]).unwrap(), m);
        let mut bin = Vec::new();
        m.write_binary(&mut bin).unwrap();
        assert_eq!(bin.len(), 8 + 49 * 8);
        assert_eq!(&bin[..8], &7u64.to_le_bytes());
        assert_eq!(SquareMatrix::read_binary(&bin[..]).unwrap(), m);
    }
}
