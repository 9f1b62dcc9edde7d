use crate::error::Violation;

/// Tolerance on row sums and mixture weights for in-memory models.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// A finite probability mass function with its natural logs cached.
#[derive(Clone, Debug, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
    logs: Vec<f64>,
}

impl Pmf {
    /// Wraps the given masses without checking them; see [`Pmf::violations`].
    pub fn new(probs: Vec<f64>) -> Self {
        let logs = probs.iter().map(|p| p.ln()).collect();
        Self { probs, logs }
    }

    pub fn uniform(size: usize) -> Self {
        Self::new(vec![1.0 / size as f64; size])
    }

    /// Point mass on `symbol`.
    pub fn degenerate(size: usize, symbol: usize) -> Self {
        let mut probs = vec![0.0; size];
        probs[symbol] = 1.0;
        Self::new(probs)
    }

    pub fn bernoulli(p_one: f64) -> Self {
        Self::new(vec![1.0 - p_one, p_one])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    #[inline]
    pub fn prob(&self, i: usize) -> f64 {
        self.probs[i]
    }

    #[inline]
    pub fn ln(&self, i: usize) -> f64 {
        self.logs[i]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    /// Entropy in nats.
    pub fn entropy(&self) -> f64 {
        self.logs.iter().map(|&l| crate::logspace::neg_plogp(l)).sum()
    }

    /// Inverse-CDF draw for a uniform `u` in `[0, 1)`.
    pub fn sample_with(&self, u: f64) -> usize {
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > 0.0 {
                last_positive = i;
                acc += p;
                if u < acc {
                    return i;
                }
            }
        }
        last_positive
    }

    pub(crate) fn violations(&self, location: &str, expected_len: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.probs.len() != expected_len {
            out.push(Violation {
                location: location.to_string(),
                residual: (self.probs.len() as f64 - expected_len as f64).abs(),
                message: format!("has {} entries, alphabet needs {}", self.probs.len(), expected_len),
            });
            return out;
        }
        for (i, &p) in self.probs.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                out.push(Violation {
                    location: format!("{location}[{i}]"),
                    residual: if p.is_finite() { -p } else { f64::INFINITY },
                    message: format!("entry {p} is not a probability"),
                });
            }
        }
        let residual = (self.probs.iter().sum::<f64>() - 1.0).abs();
        if !(residual <= NORMALIZATION_TOLERANCE) {
            out.push(Violation {
                location: location.to_string(),
                residual,
                message: "does not sum to 1".to_string(),
            });
        }
        out
    }
}

/// A stochastic matrix `W(y|x)`, one output distribution per input symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct Stochastic {
    rows: Vec<Pmf>,
    outputs: usize,
}

impl Stochastic {
    pub fn new(rows: Vec<Vec<f64>>) -> Self {
        let outputs = rows.first().map_or(0, |r| r.len());
        Self {
            rows: rows.into_iter().map(Pmf::new).collect(),
            outputs,
        }
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn row(&self, x: usize) -> &Pmf {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[Pmf] {
        &self.rows
    }

    #[inline]
    pub fn ln(&self, x: usize, y: usize) -> f64 {
        self.rows[x].ln(y)
    }

    pub(crate) fn violations(&self, location: &str, inputs: usize, outputs: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.rows.len() != inputs {
            out.push(Violation {
                location: location.to_string(),
                residual: (self.rows.len() as f64 - inputs as f64).abs(),
                message: format!("has {} rows, input alphabet needs {}", self.rows.len(), inputs),
            });
        }
        for (x, row) in self.rows.iter().enumerate() {
            out.extend(row.violations(&format!("{location} row {x}"), outputs));
        }
        out
    }
}

/// A joint distribution over `X × Y`, stored row-major (`x * |Y| + y`).
#[derive(Clone, Debug, PartialEq)]
pub struct JointPmf {
    nx: usize,
    ny: usize,
    cells: Pmf,
    marginal_x: Pmf,
    marginal_y: Pmf,
}

impl JointPmf {
    /// `rows[x][y] = P(x, y)`.
    pub fn new(rows: Vec<Vec<f64>>) -> Self {
        let nx = rows.len();
        let ny = rows.first().map_or(0, |r| r.len());
        let cells: Vec<f64> = rows.into_iter().flatten().collect();
        Self::from_cells(nx, ny, cells)
    }

    pub fn from_cells(nx: usize, ny: usize, cells: Vec<f64>) -> Self {
        let mut mx = vec![0.0; nx];
        let mut my = vec![0.0; ny];
        if cells.len() == nx * ny {
            for x in 0..nx {
                for y in 0..ny {
                    let p = cells[x * ny + y];
                    mx[x] += p;
                    my[y] += p;
                }
            }
        }
        Self {
            nx,
            ny,
            cells: Pmf::new(cells),
            marginal_x: Pmf::new(mx),
            marginal_y: Pmf::new(my),
        }
    }

    /// `P(x) W(y|x)`.
    pub fn from_input_and_channel(input: &Pmf, channel: &Stochastic) -> Self {
        let nx = input.len();
        let ny = channel.outputs();
        let mut cells = Vec::with_capacity(nx * ny);
        for x in 0..nx {
            for y in 0..ny {
                cells.push(input.prob(x) * channel.row(x).prob(y));
            }
        }
        Self::from_cells(nx, ny, cells)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.cells.prob(x * self.ny + y)
    }

    #[inline]
    pub fn ln(&self, x: usize, y: usize) -> f64 {
        self.cells.ln(x * self.ny + y)
    }

    pub fn cells(&self) -> &Pmf {
        &self.cells
    }

    pub fn marginal_x(&self) -> &Pmf {
        &self.marginal_x
    }

    pub fn marginal_y(&self) -> &Pmf {
        &self.marginal_y
    }

    /// `H(X|Y)` in nats.
    pub fn conditional_entropy(&self) -> f64 {
        self.cells.entropy() - self.marginal_y.entropy()
    }

    /// `I(X;Y)` in nats.
    pub fn mutual_information(&self) -> f64 {
        self.marginal_x.entropy() + self.marginal_y.entropy() - self.cells.entropy()
    }

    pub(crate) fn violations(&self, location: &str, nx: usize, ny: usize) -> Vec<Violation> {
        if self.nx != nx || self.ny != ny || self.cells.len() != nx * ny {
            return vec![Violation {
                location: location.to_string(),
                residual: (self.cells.len() as f64 - (nx * ny) as f64).abs(),
                message: format!("shape {}x{} does not match alphabets {}x{}", self.nx, self.ny, nx, ny),
            }];
        }
        self.cells.violations(location, nx * ny)
    }
}
