//! Systematic MDS outer code over GF(256).
//!
//! A generalized Reed-Solomon code on evaluation points `0, 1, .., theta-1`:
//! codeword symbol `i` is `v_i * P(x_i)` for the polynomial `P` of degree below
//! `k` that places the message on the first `k` coordinates. The multipliers make
//! the last coordinate the plain sum of the message symbols.

use super::gf256::{add, div, mul};
use crate::error::{FrError, Result};

#[derive(Debug, Clone)]
pub struct OuterCode {
    theta: usize,
    k: usize,
    mult: Vec<u8>,
}

/// Lagrange basis polynomial `L_i` over `points`, evaluated at `x`.
fn lagrange(points: &[u8], i: usize, x: u8) -> u8 {
    let mut num = 1u8;
    let mut den = 1u8;
    for (j, &p) in points.iter().enumerate() {
        if j != i {
            num = mul(num, add(x, p));
            den = mul(den, add(points[i], p));
        }
    }
    div(num, den)
}

impl OuterCode {
    pub fn new(theta: usize, k: usize) -> Result<Self> {
        if theta > 255 || k == 0 || k > theta {
            return Err(FrError::PreconditionFailed(format!("need 1 <= M_file = {k} <= theta = {theta} <= 255")));
        }
        let points: Vec<u8> = (0..k as u8).collect();
        let last = (theta - 1) as u8;
        let mult = (0..theta)
            .map(|i| if i < k && k < theta { lagrange(&points, i, last) } else { 1 })
            .collect();
        Ok(OuterCode { theta, k, mult })
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Encode one byte per message symbol into `theta` bytes.
    fn encode_column(&self, msg: &[u8]) -> Vec<u8> {
        let points: Vec<u8> = (0..self.k as u8).collect();
        let scaled: Vec<u8> = msg.iter().zip(&self.mult).map(|(&m, &v)| div(m, v)).collect();
        (0..self.theta)
            .map(|i| {
                if i < self.k {
                    return msg[i];
                }
                let p = (0..self.k).fold(0u8, |acc, j| add(acc, mul(scaled[j], lagrange(&points, j, i as u8))));
                mul(self.mult[i], p)
            })
            .collect()
    }

    /// Encode `k` equal-length message symbols into `theta` coded symbols.
    pub fn encode(&self, message: &[Vec<u8>]) -> Vec<Vec<u8>> {
        let len = message[0].len();
        let mut out = vec![vec![0u8; len]; self.theta];
        for b in 0..len {
            let col: Vec<u8> = message.iter().map(|m| m[b]).collect();
            for (i, v) in self.encode_column(&col).into_iter().enumerate() {
                out[i][b] = v;
            }
        }
        out
    }

    /// Recover the message from any `k` coded symbols given as `(index, bytes)`.
    pub fn decode(&self, symbols: &[(usize, Vec<u8>)]) -> Result<Vec<Vec<u8>>> {
        if symbols.len() < self.k {
            return Err(FrError::InsufficientSymbols { available: symbols.len(), needed: self.k });
        }
        let used = &symbols[..self.k];
        let points: Vec<u8> = used.iter().map(|(i, _)| *i as u8).collect();
        let len = used[0].1.len();
        let mut out = vec![vec![0u8; len]; self.k];
        // basis[j][t]: L_t over `points`, evaluated at message point j
        let basis: Vec<Vec<u8>> =
            (0..self.k).map(|j| (0..self.k).map(|t| lagrange(&points, t, j as u8)).collect()).collect();
        for b in 0..len {
            let vals: Vec<u8> = used.iter().map(|(i, s)| div(s[b], self.mult[*i])).collect();
            for j in 0..self.k {
                let p = (0..self.k).fold(0u8, |acc, t| add(acc, mul(vals[t], basis[j][t])));
                out[j][b] = mul(self.mult[j], p);
            }
        }
        Ok(out)
    }
}
