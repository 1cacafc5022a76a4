use std::fmt::Debug;

/// A potential `V(x)` known through its point values and its even Taylor
/// derivatives at the origin.
pub trait TaylorPotential: Debug + Send + Sync {
    fn label(&self) -> String;

    fn value_at(&self, x: f64) -> f64;

    /// The derivative `V^(2m)(0)`.
    fn even_coeff(&self, m: usize) -> f64;

    /// `V''(0)`; the squared frequency of the self oscillator.
    fn curvature(&self) -> f64 {
        self.even_coeff(1)
    }

    fn v0(&self) -> f64 {
        self.even_coeff(0)
    }

    /// Largest `m` with a possibly nonzero `V^(2m)(0)`, for polynomials.
    fn even_order_bound(&self) -> Option<usize> {
        None
    }
}

/// `amplitude · cos(q x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cosine {
    pub amplitude: f64,
    pub q: f64,
}

impl TaylorPotential for Cosine {
    fn label(&self) -> String {
        format!("{}*cos({}x)", self.amplitude, self.q)
    }

    fn value_at(&self, x: f64) -> f64 {
        self.amplitude * (self.q * x).cos()
    }

    fn even_coeff(&self, m: usize) -> f64 {
        self.amplitude * (-self.q * self.q).powi(m as i32)
    }
}

/// `amplitude · cosh(c x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cosh {
    pub amplitude: f64,
    pub c: f64,
}

impl TaylorPotential for Cosh {
    fn label(&self) -> String {
        format!("{}*cosh({}x)", self.amplitude, self.c)
    }

    fn value_at(&self, x: f64) -> f64 {
        self.amplitude * (self.c * x).cosh()
    }

    fn even_coeff(&self, m: usize) -> f64 {
        self.amplitude * (self.c * self.c).powi(m as i32)
    }
}

/// `exp(−α² x²)`; `alpha_sq` may be negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    pub alpha_sq: f64,
}

impl TaylorPotential for Gaussian {
    fn label(&self) -> String {
        format!("exp(-{}x^2)", self.alpha_sq)
    }

    fn value_at(&self, x: f64) -> f64 {
        (-self.alpha_sq * x * x).exp()
    }

    /// `(−α²)^m (2m)!/m!`
    fn even_coeff(&self, m: usize) -> f64 {
        let mut c = 1.0;
        for i in (m + 1)..=(2 * m) {
            c *= -self.alpha_sq * i as f64;
        }
        c
    }
}

/// `λ² (1 − e^{−α x})²`, the Morse potential with its minimum at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Morse {
    pub lam: f64,
    pub alpha: f64,
}

impl Morse {
    /// The even part `λ² (1 − 2 cosh(αx) + cosh(2αx))`, which carries every
    /// nonzero diagonal element.
    pub fn even_part(&self) -> SumPotential {
        let l2 = self.lam * self.lam;
        SumPotential::new(vec![
            Box::new(Polynomial::constant(l2)),
            Box::new(Cosh { amplitude: -2.0 * l2, c: self.alpha }),
            Box::new(Cosh { amplitude: l2, c: 2.0 * self.alpha }),
        ])
    }
}

impl TaylorPotential for Morse {
    fn label(&self) -> String {
        format!("morse(lambda={}, alpha={})", self.lam, self.alpha)
    }

    fn value_at(&self, x: f64) -> f64 {
        let s = 1.0 - (-self.alpha * x).exp();
        self.lam * self.lam * s * s
    }

    fn even_coeff(&self, m: usize) -> f64 {
        if m == 0 {
            return 0.0;
        }
        let a2m = (self.alpha * self.alpha).powi(m as i32);
        self.lam * self.lam * (4f64.powi(m as i32) - 2.0) * a2m
    }
}

/// `Σ_k c_k x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
    label: String,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let label = format!("poly{coeffs:?}");
        Self { coeffs, label }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c]).with_label(format!("{c}"))
    }

    /// `ω² x² / 2`.
    pub fn harmonic(omega: f64) -> Self {
        Self::new(vec![0.0, 0.0, 0.5 * omega * omega]).with_label(format!("{omega}^2 x^2/2"))
    }

    pub fn monomial(power: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; power + 1];
        coeffs[power] = c;
        Self::new(coeffs).with_label(format!("{c}*x^{power}"))
    }

    /// Physicists' Hermite polynomial `H_n(x)` in the monomial basis.
    pub fn hermite(n: usize) -> Self {
        let mut prev = vec![1.0];
        let mut cur = vec![0.0, 2.0];
        if n == 0 {
            return Self::new(prev).with_label("H_0".into());
        }
        for k in 1..n {
            let mut next = vec![0.0; k + 2];
            for (i, &c) in cur.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, &c) in prev.iter().enumerate() {
                next[i] -= 2.0 * k as f64 * c;
            }
            prev = cur;
            cur = next;
        }
        Self::new(cur).with_label(format!("H_{n}"))
    }

    pub fn with_label(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

impl TaylorPotential for Polynomial {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn value_at(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn even_coeff(&self, m: usize) -> f64 {
        match self.coeffs.get(2 * m) {
            Some(&c) => c * (1..=2 * m).map(|i| i as f64).product::<f64>(),
            None => 0.0,
        }
    }

    fn even_order_bound(&self) -> Option<usize> {
        Some(self.coeffs.len().saturating_sub(1) / 2)
    }
}

/// Pointwise sum of potentials.
#[derive(Debug)]
pub struct SumPotential {
    parts: Vec<Box<dyn TaylorPotential>>,
}

impl SumPotential {
    pub fn new(parts: Vec<Box<dyn TaylorPotential>>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[Box<dyn TaylorPotential>] {
        &self.parts
    }
}

impl TaylorPotential for SumPotential {
    fn label(&self) -> String {
        self.parts.iter().map(|p| p.label()).collect::<Vec<_>>().join(" + ")
    }

    fn value_at(&self, x: f64) -> f64 {
        self.parts.iter().map(|p| p.value_at(x)).sum()
    }

    fn even_coeff(&self, m: usize) -> f64 {
        self.parts.iter().map(|p| p.even_coeff(m)).sum()
    }

    fn even_order_bound(&self) -> Option<usize> {
        self.parts
            .iter()
            .map(|p| p.even_order_bound())
            .try_fold(0, |acc, b| b.map(|b| acc.max(b)))
    }
}
