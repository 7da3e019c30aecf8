//! Characteristic polynomials of rooted compositions, computed from the
//! characteristic polynomials of the pieces.
//!
//! Inputs are polynomial pairs `(χ_H, χ_{H-v})`, so the same operations
//! serve both closed forms from [`crate::bethe`] and pairs measured on
//! explicit graphs by [`crate::oracle`].

use serde::Serialize;
use thiserror::Error;

use crate::graphs::{Graph, RootedGraph};
use crate::oracle::char_poly_of_graph;
use crate::poly::IntPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchwenkError {
    #[error("χ_H and χ_(H-v) must be monic with deg χ_H = deg χ_(H-v) + 1")]
    BadPair,
    #[error("deg χ_G0 = {degree:?} but G0 has {p} vertices")]
    OrderMismatch { degree: Option<usize>, p: usize },
    #[error("s must be at least 2 (got {0})")]
    SizeTooSmall(usize),
}

/// `(χ_H, χ_{H-v})` for a rooted graph `(H, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootedCharPair {
    pub chi_h: IntPoly,
    pub chi_hv: IntPoly,
}

impl RootedCharPair {
    pub fn new(chi_h: IntPoly, chi_hv: IntPoly) -> Result<Self, SchwenkError> {
        let ok = chi_h.is_monic()
            && chi_hv.is_monic()
            && chi_h.degree() == chi_hv.degree().map(|d| d + 1);
        if !ok {
            return Err(SchwenkError::BadPair);
        }
        Ok(RootedCharPair { chi_h, chi_hv })
    }

    /// Measure the pair on an explicit rooted graph with the oracle.
    pub fn of_graph(h: &RootedGraph) -> Self {
        RootedCharPair {
            chi_h: char_poly_of_graph(&h.graph),
            chi_hv: char_poly_of_graph(&h.without_root()),
        }
    }

    /// `K_1` rooted at its only vertex: `(λ, 1)`.
    pub fn single_vertex() -> Self {
        RootedCharPair {
            chi_h: IntPoly::x(),
            chi_hv: IntPoly::one(),
        }
    }

    /// `χ_H + χ_{H-v}`.
    pub fn sum(&self) -> IntPoly {
        &self.chi_h + &self.chi_hv
    }
}

/// `χ` of the coalescence `G · H`:
/// `χ_{G-u} χ_H + χ_G χ_{H-v} - λ χ_{G-u} χ_{H-v}`.
pub fn coalesce(g: &RootedCharPair, h: &RootedCharPair) -> IntPoly {
    let a = &g.chi_hv * &h.chi_h;
    let b = &g.chi_h * &h.chi_hv;
    let c = (&g.chi_hv * &h.chi_hv).shift(1);
    &(&a + &b) - &c
}

/// `χ` of the graph obtained by attaching `H` at every vertex of a
/// `p`-vertex graph `G_0`: `χ_{H-v}^p · χ_{G_0}(χ_H / χ_{H-v})`, evaluated
/// as `Σ_j c_j χ_H^j χ_{H-v}^{p-j}`.
pub fn attach_to_all(
    chi_g0: &IntPoly,
    p: usize,
    h: &RootedCharPair,
) -> Result<IntPoly, SchwenkError> {
    if chi_g0.degree() != Some(p) {
        return Err(SchwenkError::OrderMismatch {
            degree: chi_g0.degree(),
            p,
        });
    }
    let mut h_pows = vec![IntPoly::one()];
    let mut hv_pows = vec![IntPoly::one()];
    for j in 1..=p {
        h_pows.push(&h_pows[j - 1] * &h.chi_h);
        hv_pows.push(&hv_pows[j - 1] * &h.chi_hv);
    }
    let mut acc = IntPoly::zero();
    for (j, c) in chi_g0.coeffs().iter().enumerate() {
        if c.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        acc = &acc + &(&h_pows[j] * &hv_pows[p - j]).scale(c);
    }
    Ok(acc)
}

/// A characteristic polynomial in the shape `factor_a · factor_b^exponent_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCharPoly {
    pub factor_a: IntPoly,
    pub factor_b: IntPoly,
    pub exponent_b: u64,
}

impl SplitCharPoly {
    pub fn product(&self) -> IntPoly {
        &self.factor_a * &self.factor_b.pow(self.exponent_b)
    }
}

/// `H` attached at every vertex of `K_s`:
/// `(χ_H - (s-1) χ_{H-v}) · (χ_H + χ_{H-v})^{s-1}`.
pub fn attach_complete(h: &RootedCharPair, s: usize) -> Result<SplitCharPoly, SchwenkError> {
    if s < 2 {
        return Err(SchwenkError::SizeTooSmall(s));
    }
    Ok(SplitCharPoly {
        factor_a: &h.chi_h - &h.chi_hv.scale_i64(s as i64 - 1),
        factor_b: h.sum(),
        exponent_b: s as u64 - 1,
    })
}

/// `H` attached at all but one vertex of `K_s`:
/// `(λ χ_H - ((s-2) λ + (s-1)) χ_{H-v}) · (χ_H + χ_{H-v})^{s-2}`.
///
/// For `s = 2` the exponent is 0; `factor_b` is still filled in.
pub fn attach_complete_minus_one(
    h: &RootedCharPair,
    s: usize,
) -> Result<SplitCharPoly, SchwenkError> {
    if s < 2 {
        return Err(SchwenkError::SizeTooSmall(s));
    }
    let s = s as i64;
    let weight = IntPoly::from_i64s(&[s - 1, s - 2]);
    Ok(SplitCharPoly {
        factor_a: &h.chi_h.shift(1) - &(&weight * &h.chi_hv),
        factor_b: h.sum(),
        exponent_b: s as u64 - 2,
    })
}

/// `χ_{K_s} = (λ - s + 1)(λ + 1)^{s-1}`.
pub fn complete_char_poly(s: usize) -> IntPoly {
    if s == 0 {
        return IntPoly::one();
    }
    &IntPoly::x_plus(1 - s as i64) * &IntPoly::x_plus(1).pow(s as u64 - 1)
}

/// Graphs realising the compositions above, for checks against the oracle.
pub mod constructions {
    use super::*;
    use crate::graphs::{attach_rooted, coalesce as coalesce_graphs};

    pub fn coalescence(g: &RootedGraph, h: &RootedGraph) -> Graph {
        coalesce_graphs(g, h).graph
    }

    pub fn attached_to_all(g0: &Graph, h: &RootedGraph) -> Graph {
        let targets: Vec<usize> = (0..g0.vertex_count()).collect();
        attach_rooted(g0, h, &targets)
    }

    pub fn attached_to_complete(h: &RootedGraph, s: usize) -> Graph {
        attached_to_all(&Graph::complete(s), h)
    }

    /// `H` at vertices `1..s` of `K_s`, vertex 0 left bare.
    pub fn attached_to_complete_minus_one(h: &RootedGraph, s: usize) -> Graph {
        let targets: Vec<usize> = (1..s).collect();
        attach_rooted(&Graph::complete(s), h, &targets)
    }
}
