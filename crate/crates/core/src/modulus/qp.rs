//! Minimum-norm weights subject to path constraints.
//!
//! `min |ρ|²` subject to `Σ_{i∈P} ρ_i ≥ 1` for every constraint set `P` is a
//! least-distance program. With `E = [Gᵀ; 1ᵀ]` (one column per constraint)
//! it reduces to the nonnegative least-squares problem `min |E u − e_{n+1}|`,
//! and `ρ = Gᵀu / (1 − Σu)`. The NNLS is solved by the Lawson–Hanson active
//! set method on the normal equations, warm-started from the previous
//! solution as constraints are added.

use crate::error::{Error, Result};

pub(crate) struct LeastDistance {
    n: usize,
    sets: Vec<Vec<usize>>,
    /// `EᵀE = GGᵀ + 11ᵀ`, grown one row and column per constraint.
    gram: Vec<Vec<f64>>,
    u: Vec<f64>,
}

fn overlap(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                k += 1;
                i += 1;
                j += 1;
            }
        }
    }
    k
}

impl LeastDistance {
    pub fn new(n: usize) -> Self {
        LeastDistance { n, sets: Vec::new(), gram: Vec::new(), u: Vec::new() }
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn multipliers(&self) -> &[f64] {
        &self.u
    }

    /// Adds a constraint (a sorted carrier set); returns false if it was
    /// already present.
    pub fn push(&mut self, set: Vec<usize>) -> bool {
        if self.sets.contains(&set) {
            return false;
        }
        let row: Vec<f64> = self.sets.iter().map(|s| (overlap(s, &set) + 1) as f64).collect();
        for (r, &x) in self.gram.iter_mut().zip(&row) {
            r.push(x);
        }
        let mut row = row;
        row.push((set.len() + 1) as f64);
        self.gram.push(row);
        self.sets.push(set);
        self.u.push(0.0);
        true
    }

    /// Solves the current program and returns the optimal weights.
    pub fn solve(&mut self) -> Result<Vec<f64>> {
        let m = self.sets.len();
        let scale = self.gram.iter().enumerate().map(|(i, r)| r[i]).fold(1.0, f64::max);
        let tol = 1e-12 * scale * (m as f64).max(1.0);
        let mut z = self.u.clone();
        let mut passive: Vec<bool> = z.iter().map(|&x| x > 0.0).collect();
        let grad = |z: &[f64]| -> Vec<f64> {
            (0..m).map(|i| 1.0 - self.gram[i].iter().zip(z).map(|(a, b)| a * b).sum::<f64>()).collect()
        };
        let mut first = passive.iter().any(|&p| p);
        let max_outer = 3 * m + 50;
        let mut outer = 0;
        loop {
            if !first {
                let w = grad(&z);
                let j = (0..m).filter(|&i| !passive[i]).max_by(|&a, &b| w[a].total_cmp(&w[b]));
                match j {
                    Some(j) if w[j] > tol => passive[j] = true,
                    _ => break,
                }
            }
            first = false;
            outer += 1;
            if outer > max_outer {
                return Err(Error::QpFailure("active set cycling".into()));
            }
            let mut inner = 0;
            loop {
                let s = self.solve_passive(&passive)?;
                let bad: Vec<usize> = (0..m).filter(|&i| passive[i] && s[i] <= 0.0).collect();
                if bad.is_empty() {
                    z = s;
                    break;
                }
                inner += 1;
                if inner > m + 5 {
                    return Err(Error::QpFailure("active set cycling".into()));
                }
                let (alpha, hit) = bad
                    .iter()
                    .map(|&i| (z[i] / (z[i] - s[i]), i))
                    .fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a });
                for i in 0..m {
                    z[i] += alpha * (s[i] - z[i]);
                    if passive[i] && (i == hit || z[i] <= 1e-15) {
                        passive[i] = false;
                        z[i] = 0.0;
                    }
                }
            }
        }
        self.u = z;
        let total: f64 = self.u.iter().sum();
        if total >= 1.0 - 1e-14 {
            return Err(Error::QpFailure("multipliers sum to 1".into()));
        }
        let mut rho = vec![0.0; self.n];
        for (set, &ui) in self.sets.iter().zip(&self.u) {
            if ui > 0.0 {
                for &c in set {
                    rho[c] += ui;
                }
            }
        }
        for r in &mut rho {
            *r /= 1.0 - total;
        }
        Ok(rho)
    }

    /// Unconstrained least squares on the passive columns, zero elsewhere.
    fn solve_passive(&self, passive: &[bool]) -> Result<Vec<f64>> {
        let idx: Vec<usize> = (0..passive.len()).filter(|&i| passive[i]).collect();
        let k = idx.len();
        let mut a: Vec<Vec<f64>> = idx.iter().map(|&i| idx.iter().map(|&j| self.gram[i][j]).collect()).collect();
        // Cholesky, in place in the lower triangle
        for j in 0..k {
            let mut d = a[j][j];
            for p in 0..j {
                d -= a[j][p] * a[j][p];
            }
            if d <= 1e-13 * self.gram[idx[j]][idx[j]] {
                // dependent column: nudge it so the factorization survives
                d = 1e-13 * self.gram[idx[j]][idx[j]];
            }
            let d = d.sqrt();
            a[j][j] = d;
            for i in j + 1..k {
                let mut x = a[i][j];
                for p in 0..j {
                    x -= a[i][p] * a[j][p];
                }
                a[i][j] = x / d;
            }
        }
        let mut y = vec![1.0; k];
        for i in 0..k {
            for p in 0..i {
                y[i] -= a[i][p] * y[p];
            }
            y[i] /= a[i][i];
        }
        for i in (0..k).rev() {
            for p in i + 1..k {
                y[i] -= a[p][i] * y[p];
            }
            y[i] /= a[i][i];
        }
        if y.iter().any(|x| !x.is_finite()) {
            return Err(Error::QpFailure("singular normal equations".into()));
        }
        let mut s = vec![0.0; passive.len()];
        for (p, &i) in idx.iter().enumerate() {
            s[i] = y[p];
        }
        Ok(s)
    }
}
