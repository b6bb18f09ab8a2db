//! Wynn's epsilon algorithm for accelerating slowly convergent sequences,
//! in particular partial sums of alternating series.

/// Keeps the latest antidiagonal of the epsilon table.
#[derive(Debug, Clone, Default)]
pub struct EpsilonTable {
    diag: Vec<f64>,
    estimates: Vec<f64>,
}

impl EpsilonTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of sequence terms pushed so far.
    pub fn len(&self) -> usize {
        self.estimates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.estimates.is_empty()
    }

    /// Appends the next partial sum and returns the current extrapolated
    /// limit.
    pub fn push(&mut self, s: f64) -> f64 {
        let mut next = Vec::with_capacity(self.diag.len() + 1);
        next.push(s);
        for k in 0..self.diag.len() {
            let prev = if k == 0 { 0.0 } else { self.diag[k - 1] };
            let delta = next[k] - self.diag[k];
            if delta == 0.0 || !delta.is_finite() {
                // the column has converged exactly; further columns are undefined
                break;
            }
            let v = prev + 1.0 / delta;
            if !v.is_finite() {
                break;
            }
            next.push(v);
        }
        self.diag = next;
        let best = self.diag[(self.diag.len() - 1) & !1];
        self.estimates.push(best);
        best
    }

    /// Latest extrapolated value.
    pub fn estimate(&self) -> Option<f64> {
        self.estimates.last().copied()
    }

    /// Heuristic error from the spread of the last three estimates.
    pub fn error(&self) -> f64 {
        let n = self.estimates.len();
        if n < 3 {
            return f64::INFINITY;
        }
        let e = &self.estimates[n - 3..];
        (e[2] - e[1]).abs() + (e[2] - e[0]).abs()
    }
}
