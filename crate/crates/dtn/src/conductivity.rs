use crate::DtnError;
use field_core::ComplexField;
use std::fmt;
use std::sync::Arc;

/// Piecewise-constant radial conductivity: `values[0]` on `r < radii[0]`,
/// `values[i]` on `radii[i−1] < r < radii[i]`, the last value up to `r = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialLayers {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
}

impl RadialLayers {
    pub fn new(radii: Vec<f64>, values: Vec<f64>) -> Result<Self, DtnError> {
        if values.len() != radii.len() + 1 {
            return Err(DtnError::InvalidLayers(format!("{} radii need {} values, got {}", radii.len(), radii.len() + 1, values.len())));
        }
        let mut prev = 0.0;
        for &r in &radii {
            if !(r > prev && r < 1.0) {
                return Err(DtnError::InvalidLayers(format!("radii must increase inside (0, 1), got {radii:?}")));
            }
            prev = r;
        }
        if values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(DtnError::InvalidLayers(format!("values must be positive, got {values:?}")));
        }
        Ok(Self { radii, values })
    }

    /// `γ ≡ 1` outside `B(0, r0)`, `inner` inside.
    pub fn inclusion(r0: f64, inner: f64) -> Result<Self, DtnError> {
        Self::new(vec![r0], vec![inner, 1.0])
    }

    pub fn value(&self, r: f64) -> f64 {
        let i = self.radii.iter().take_while(|&&ri| r >= ri).count();
        self.values[i]
    }

    /// Thinnest layer.
    pub fn min_feature(&self) -> f64 {
        let mut edges = vec![0.0];
        edges.extend(&self.radii);
        edges.push(1.0);
        edges.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }
}

/// Exact description of `γ` used in place of grid sampling.
#[derive(Clone)]
pub enum Descriptor {
    Layers(RadialLayers),
    Analytic(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Layers(l) => f.debug_tuple("Layers").field(l).finish(),
            Descriptor::Analytic(_) => f.write_str("Analytic(..)"),
        }
    }
}

/// Real conductivity on the unit disk with `1/K ≤ γ ≤ K`.
#[derive(Clone, Debug)]
pub struct Conductivity {
    gamma: ComplexField,
    big_k: f64,
    descriptor: Option<Descriptor>,
    scale: f64,
}

impl Conductivity {
    /// Grid samples; finite-element coefficients are read by bilinear interpolation.
    pub fn from_grid(gamma: ComplexField, big_k: f64) -> Result<Self, DtnError> {
        let c = Self { gamma, big_k, descriptor: None, scale: 1.0 };
        c.validate()?;
        Ok(c)
    }

    /// Radial layers; the grid field is sampled from them.
    pub fn from_layers(layers: RadialLayers, big_k: f64, grid: field_core::Grid) -> Result<Self, DtnError> {
        let l = layers.clone();
        let gamma = ComplexField::from_fn(grid, "gamma", move |z| (if z.norm() <= 1.0 { l.value(z.norm()) } else { 1.0 }).into());
        let c = Self { gamma, big_k, descriptor: Some(Descriptor::Layers(layers)), scale: 1.0 };
        c.validate()?;
        Ok(c)
    }

    /// Closed-form `γ(x, y)`; the grid field is sampled from it.
    pub fn from_fn(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static, big_k: f64, grid: field_core::Grid) -> Result<Self, DtnError> {
        let f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> = Arc::new(f);
        let g = f.clone();
        let gamma = ComplexField::from_fn(grid, "gamma", move |z| g(z.re, z.im).into());
        let c = Self { gamma, big_k, descriptor: Some(Descriptor::Analytic(f)), scale: 1.0 };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), DtnError> {
        if !(self.big_k >= 1.0) {
            return Err(DtnError::EllipticityViolation { value: f64::NAN, x: 0.0, y: 0.0, big_k: self.big_k });
        }
        let g = self.gamma.grid();
        let (lo, hi) = (1.0 / self.big_k, self.big_k);
        for i in g.disk_mask(1.0).indices() {
            let v = self.gamma.samples()[i];
            if v.im.abs() > 1e-12 || v.re < lo * (1.0 - 1e-12) || v.re > hi * (1.0 + 1e-12) {
                let z = g.z(i);
                return Err(DtnError::EllipticityViolation { value: v.re, x: z.re, y: z.im, big_k: self.big_k });
            }
        }
        if let Some(Descriptor::Layers(l)) = &self.descriptor {
            if let Some(v) = l.values.iter().find(|v| **v < lo * (1.0 - 1e-12) || **v > hi * (1.0 + 1e-12)) {
                return Err(DtnError::EllipticityViolation { value: *v, x: f64::NAN, y: f64::NAN, big_k: self.big_k });
            }
        }
        Ok(())
    }

    pub fn gamma(&self) -> &ComplexField {
        &self.gamma
    }

    pub fn big_k(&self) -> f64 {
        self.big_k
    }

    pub fn descriptor(&self) -> Option<&Descriptor> {
        self.descriptor.as_ref()
    }

    /// `γ(s·x)` viewed on the unit disk, `0 < s ≤ 1`.
    pub fn scaled(&self, s: f64) -> Self {
        Self { scale: self.scale * s, ..self.clone() }
    }

    pub fn value_at(&self, x: f64, y: f64) -> f64 {
        let (x, y) = (x * self.scale, y * self.scale);
        match &self.descriptor {
            Some(Descriptor::Layers(l)) => l.value(x.hypot(y)),
            Some(Descriptor::Analytic(f)) => f(x, y),
            None => self.gamma.bilinear(field_core::Complex64::new(x, y)).re,
        }
    }

    /// Interface radii in the (scaled) unit-disk coordinates.
    pub fn interfaces(&self) -> Vec<f64> {
        match &self.descriptor {
            Some(Descriptor::Layers(l)) => l.radii.iter().map(|r| r / self.scale).filter(|r| *r < 1.0).collect(),
            _ => vec![],
        }
    }

    /// Thinnest layer in unit-disk coordinates when the conductivity is layered.
    pub fn min_feature(&self) -> Option<f64> {
        match &self.descriptor {
            Some(Descriptor::Layers(_)) => {
                let mut edges = vec![0.0];
                edges.extend(self.interfaces());
                edges.push(1.0);
                Some(edges.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min))
            }
            _ => None,
        }
    }
}
