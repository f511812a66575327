//! Floating-point samples of both sides of the identity along a
//! one-parameter subgroup, for plotting. Never used for verdicts.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use shelstad_core::characters::{ds_character_f64, weyl_character_f64, HarishChandraParameter};
use shelstad_core::exact::rational::to_f64;
use shelstad_core::packets::build_packet;
use shelstad_core::real_forms::InnerFormPair;
use shelstad_core::roots::{RootSystem, Weight};
use shelstad_core::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotRow {
    pub t: f64,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    /// `|lhs - rhs|`; NaN at a singular `t`.
    pub abs_diff: f64,
}

fn slopes(rs: &RootSystem, direction: &Weight) -> Vec<f64> {
    // <α, g(t)> = (t/2π) Σ_j <α, α_j^∨> d_j
    let d: Vec<f64> = direction.coords().iter().map(to_f64).collect();
    rs.positive_roots()
        .iter()
        .map(|a| a.weight.iter().zip(&d).map(|(&m, x)| m as f64 * x).sum())
        .collect()
}

fn all_ones(rs: &RootSystem) -> Weight {
    Weight::from_ints(&vec![1; rs.rank()])
}

/// `count` evenly spaced values in `(0, π)`, dropping every `t` within
/// `margin` of a singular parameter (one where `e^α(g(t)) = 1` for some
/// root `α`).
pub fn t_grid(rs: &RootSystem, count: usize, margin: f64, direction: Option<&Weight>) -> Vec<f64> {
    let ones = all_ones(rs);
    let s = slopes(rs, direction.unwrap_or(&ones));
    // grid endpoints sit exactly at the margin; keep them despite rounding
    let cutoff = margin * (1.0 - 1e-9);
    let near_singular = |t: f64| {
        t < cutoff
            || t > PI - cutoff
            || s.iter().any(|&s| {
                if s == 0.0 {
                    return true;
                }
                let x = t * s / TAU;
                (x - x.round()).abs() * TAU / s.abs() < cutoff
            })
    };
    match count {
        0 => Vec::new(),
        1 => vec![PI / 2.0].into_iter().filter(|&t| !near_singular(t)).collect(),
        _ => (0..count)
            .map(|i| margin + (PI - 2.0 * margin) * i as f64 / (count - 1) as f64)
            .filter(|&t| !near_singular(t))
            .collect(),
    }
}

/// Both sides of the identity for the packet of `λ` at `g(t) = (t/2π)·d`,
/// one row per grid value.
pub fn emit_plot_data(
    pair: &InnerFormPair,
    lambda: &Weight,
    grid: &[f64],
    direction: Option<&Weight>,
) -> Result<Vec<PlotRow>> {
    let spec = pair.noncompact();
    let rs = spec.root_system();
    let packet = build_packet(pair, lambda)?;
    let dominant = HarishChandraParameter::new(packet.infinitesimal_character.clone(), rs)?;
    let ones = all_ones(rs);
    let d: Vec<f64> = direction.unwrap_or(&ones).coords().iter().map(to_f64).collect();
    let sign = spec.sign() as f64;
    Ok(grid
        .iter()
        .map(|&t| {
            let coords: Vec<f64> = d.iter().map(|x| x * t / TAU).collect();
            let lhs = packet
                .members
                .iter()
                .map(|m| ds_character_f64(m, spec, &coords))
                .sum::<Complex64>()
                * sign;
            let rhs = weyl_character_f64(&dominant, rs, &coords);
            PlotRow {
                t,
                lhs_re: lhs.re,
                lhs_im: lhs.im,
                rhs_re: rhs.re,
                rhs_im: rhs.im,
                abs_diff: (lhs - rhs).norm(),
            }
        })
        .collect())
}
