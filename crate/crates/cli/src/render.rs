//! Circle diagrams: the first two measurement sets as points on a circle
//! joined to their diametric opposites, and the third-qubit β ticks.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use paradox_forge_core::{beta, delta, Angle, QuantumScenario};
use serde::Serialize;

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Circles {
    pub m1: bool,
    pub m2: bool,
    pub ticks: bool,
}

impl Default for Circles {
    fn default() -> Self {
        Circles {
            m1: true,
            m2: true,
            ticks: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    /// Side of one square panel, in pixels.
    pub size: u32,
    pub circles: Circles,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            size: 320,
            circles: Circles::default(),
        }
    }
}

/// `β(λ₃, C_l)` and `β(λ₃, C_l) + δ(λ₃, C_l)`, both in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tick {
    pub l: usize,
    pub beta: f64,
    pub flipped: f64,
}

pub fn beta_ticks(scenario: &QuantumScenario) -> Vec<Tick> {
    let lambda = scenario.state.lambda(2);
    scenario
        .measurements
        .set(2)
        .iter()
        .enumerate()
        .map(|(l, c)| {
            let b = beta(lambda, c).0;
            let d = delta(lambda, c).0;
            Tick {
                l,
                beta: b.radians().rem_euclid(TAU),
                flipped: (b + d).radians().rem_euclid(TAU),
            }
        })
        .collect()
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn label(a: &Angle) -> String {
    match a.pi_fraction() {
        Some(f) if *f.numer() == 0 => "0".into(),
        Some(f) => {
            let n = match *f.numer() {
                1 => String::new(),
                k => k.to_string(),
            };
            match *f.denom() {
                1 => format!("{n}π"),
                d => format!("{n}π/{d}"),
            }
        }
        None => format!("{:.3}", a.radians()),
    }
}

struct Panel {
    cx: f64,
    cy: f64,
    r: f64,
}

impl Panel {
    fn at(&self, theta: f64, scale: f64) -> (f64, f64) {
        (self.cx + scale * self.r * theta.cos(), self.cy - scale * self.r * theta.sin())
    }

    fn frame(&self, out: &mut String, title: &str) {
        let _ = writeln!(
            out,
            r##"  <circle cx="{}" cy="{}" r="{}" fill="none" stroke="#444" stroke-width="1.5"/>"##,
            num(self.cx),
            num(self.cy),
            num(self.r)
        );
        let _ = writeln!(
            out,
            r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbb" stroke-width="0.8"/>"##,
            num(self.cx - 1.1 * self.r),
            num(self.cy),
            num(self.cx + 1.1 * self.r),
            num(self.cy)
        );
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" text-anchor="middle" font-size="14">{title}</text>"#,
            num(self.cx),
            num(self.cy - 1.3 * self.r)
        );
    }

    fn measurement_set(&self, out: &mut String, qubit: usize, set: &[Angle]) {
        for a in set {
            let phi = a.radians();
            let (x0, y0) = self.at(phi, 1.0);
            let (x1, y1) = self.at(phi + PI, 1.0);
            let (lx, ly) = self.at(phi, 1.18);
            let _ = writeln!(
                out,
                r##"  <line class="chord" data-qubit="{qubit}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888" stroke-dasharray="4 3"/>"##,
                num(x0),
                num(y0),
                num(x1),
                num(y1)
            );
            let _ = writeln!(
                out,
                r##"  <circle class="measurement" data-qubit="{qubit}" data-angle="{}" cx="{}" cy="{}" r="4" fill="#222"/>"##,
                num(phi),
                num(x0),
                num(y0)
            );
            let _ = writeln!(
                out,
                r##"  <circle class="opposite" data-qubit="{qubit}" cx="{}" cy="{}" r="4" fill="#fff" stroke="#222"/>"##,
                num(x1),
                num(y1)
            );
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" text-anchor="middle" dominant-baseline="middle" font-size="11">{}</text>"#,
                num(lx),
                num(ly),
                label(a)
            );
        }
    }

    fn ticks(&self, out: &mut String, ticks: &[Tick]) {
        for t in ticks {
            let color = COLORS[t.l % COLORS.len()];
            for (kind, theta) in [("beta", t.beta), ("flipped", t.flipped)] {
                let (x0, y0) = self.at(theta, 0.88);
                let (x1, y1) = self.at(theta, 1.12);
                let _ = writeln!(
                    out,
                    r#"  <line class="tick" data-l="{}" data-kind="{kind}" data-angle="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="3"/>"#,
                    t.l,
                    num(theta),
                    num(x0),
                    num(y0),
                    num(x1),
                    num(y1)
                );
            }
        }
    }
}

/// Deterministic SVG for a scenario. The tick circle is dropped when the
/// third measurement set is empty.
pub fn render_svg(scenario: &QuantumScenario, spec: &RenderSpec) -> anyhow::Result<String> {
    anyhow::ensure!(spec.size > 0, "image size must be positive");
    let m = &scenario.measurements;
    let mut panels: Vec<&str> = Vec::new();
    if spec.circles.m1 {
        panels.push("m1");
    }
    if spec.circles.m2 {
        panels.push("m2");
    }
    if spec.circles.ticks && !m.set(2).is_empty() {
        panels.push("ticks");
    }
    let size = spec.size as f64;
    let width = size * panels.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(size),
        num(width),
        num(size)
    );
    let _ = writeln!(out, r##"  <rect width="100%" height="100%" fill="#fff"/>"##);
    for (i, which) in panels.iter().enumerate() {
        let panel = Panel {
            cx: size * (i as f64 + 0.5),
            cy: size * 0.54,
            r: size * 0.34,
        };
        match *which {
            "m1" => {
                panel.frame(&mut out, "M1");
                panel.measurement_set(&mut out, 0, m.set(0));
            }
            "m2" => {
                panel.frame(&mut out, "M2");
                panel.measurement_set(&mut out, 1, m.set(1));
            }
            _ => {
                panel.frame(&mut out, "β ticks");
                panel.ticks(&mut out, &beta_ticks(scenario));
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
