//! Nonlinearity coefficients of the fifth-order mKdV family.

use serde::{Deserialize, Serialize};

/// Coefficients of the nonlinear terms in
/// `∂ₜu − ∂ₓ⁵u + c₁∂ₓ³(u³) + c₂ u ∂ₓu ∂ₓ²u + c₃ u² ∂ₓ³u + c₀ u⁴∂ₓu = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquationCoeffs {
    /// Coefficient of ∂ₓ³(u³), evaluated as cube-then-differentiate.
    pub c1: f64,
    /// Coefficient of u ∂ₓu ∂ₓ²u.
    pub c2: f64,
    /// Coefficient of u² ∂ₓ³u.
    pub c3: f64,
    /// Coefficient of the lower-order quintic term u⁴∂ₓu (default 0).
    #[serde(default)]
    pub c0: f64,
}

impl EquationCoeffs {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Self {
        EquationCoeffs { c1, c2, c3, c0: 0.0 }
    }

    /// Pure cube-derivative nonlinearity ∂ₓ³(u³): the form the wave-packet
    /// transfer constant 2/√(3N³) is derived for.
    pub fn cubic_derivative() -> Self {
        EquationCoeffs::new(1.0, 0.0, 0.0)
    }

    /// The integrable second mKdV-hierarchy flow
    ///
    /// `∂ₜu − ∂ₓ⁵u − 30u⁴∂ₓu + 10u²∂ₓ³u + 10(∂ₓu)³ + 40u∂ₓu∂ₓ²u = 0`.
    ///
    /// Expanding ∂ₓ³(u³) = 6(∂ₓu)³ + 18u∂ₓu∂ₓ²u + 3u²∂ₓ³u shows the monomial
    /// triple (u²∂ₓ³u, (∂ₓu)³, u∂ₓu∂ₓ²u) with weights (10, 10, 40) is
    /// reproduced by exactly one (c₁, c₂, c₃):
    ///
    /// ```text
    /// 6c₁ = 10,  18c₁ + c₂ = 40,  3c₁ + c₃ = 10   ⇒  (c₁, c₂, c₃) = (5/3, 10, 5)
    /// ```
    ///
    /// with the quintic coefficient c₀ = −30.
    pub fn integrable() -> Self {
        EquationCoeffs {
            c1: 5.0 / 3.0,
            c2: 10.0,
            c3: 5.0,
            c0: -30.0,
        }
    }

    /// Weights of the third-order monomials (u²∂ₓ³u, (∂ₓu)³, u∂ₓu∂ₓ²u) after
    /// expanding the c₁ group.
    pub fn monomial_weights(&self) -> (f64, f64, f64) {
        (
            3.0 * self.c1 + self.c3,
            6.0 * self.c1,
            18.0 * self.c1 + self.c2,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c1 == 0.0 && self.c2 == 0.0 && self.c3 == 0.0 && self.c0 == 0.0
    }

    /// Mass ∫u²dx is conserved by the flow exactly when 3c₁ + c₂ − 3c₃ = 0
    /// (integration by parts on the periodic domain; the quintic term is
    /// always conservative).
    pub fn conserves_mass(&self) -> bool {
        (3.0 * self.c1 + self.c2 - 3.0 * self.c3).abs() < 1e-12
    }
}

impl Default for EquationCoeffs {
    fn default() -> Self {
        EquationCoeffs::cubic_derivative()
    }
}
