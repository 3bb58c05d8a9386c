//! Line-oriented structure documents: a diffable text format that records
//! everything needed to rebuild a `Structure`, plus informational entries
//! (moments, matrix diagonals) that the loader ignores.

use wavetrap::levelset::{CurveEnd, LevelCurve};
use wavetrap::potential::{FieldPoint, ModeParams};
use wavetrap::structure::{
    assemble_matrices, body_moments, BallastLayer, BodySection, DensityPlan, Structure,
};

pub const MAGIC: &str = "wavetrap structure v1";

fn fmt(v: f64) -> String {
    format!("{v:.17e}")
}

fn end_to_string(e: &CurveEnd) -> String {
    match e {
        CurveEnd::FreeSurface(r) => format!("surface {}", fmt(*r)),
        CurveEnd::Axis => "axis".into(),
        CurveEnd::Infinity => "infinity".into(),
    }
}

pub fn save(s: &Structure) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("m = {}\n", s.mode.m));
    out.push_str(&format!("omega = {}\n", fmt(s.mode.omega)));
    out.push_str(&format!("gravity = {}\n", fmt(s.mode.g)));
    out.push_str(&format!("ring_radius = {}\n", fmt(s.mode.rho_r)));
    out.push_str(&format!("bodies = {}\n", s.bodies.len()));
    for b in &s.bodies {
        out.push_str("\n[body]\n");
        out.push_str(&format!("heave = {}\n", fmt(b.heave)));
        out.push_str(&format!("level = {}\n", fmt(b.wetted.level)));
        out.push_str(&format!("left_end = {}\n", end_to_string(&b.wetted.left_end)));
        out.push_str(&format!("right_end = {}\n", end_to_string(&b.wetted.right_end)));
        out.push_str(&format!(
            "encloses_ring = {}\n",
            u8::from(b.wetted.encloses_ring)
        ));
        out.push_str(&format!("waterline_inner = {}\n", fmt(b.waterline_radii.0)));
        out.push_str(&format!("waterline_outer = {}\n", fmt(b.waterline_radii.1)));
        out.push_str(&format!(
            "superstructure_height = {}\n",
            fmt(b.superstructure_height)
        ));
        out.push_str(&format!("ballast_mass = {}\n", fmt(b.ballast.total_mass)));
        out.push_str(&format!(
            "ballast_com_eta = {}\n",
            fmt(b.ballast.center_of_mass_eta)
        ));
        for l in &b.ballast.layers {
            out.push_str(&format!(
                "ballast_layer = {} {} {} {} {}\n",
                fmt(l.rho.0),
                fmt(l.rho.1),
                fmt(l.eta.0),
                fmt(l.eta.1),
                fmt(l.density_ratio)
            ));
        }
        // informational; ignored on load
        if let Ok(m) = body_moments(b) {
            out.push_str(&format!("# displaced_volume = {}\n", fmt(m.displaced_volume)));
            out.push_str(&format!("# waterplane_area = {}\n", fmt(m.i_d)));
        }
        if let Ok(eq) = assemble_matrices(b) {
            let d = |i: usize| fmt(eq.e0[(i, i)]);
            out.push_str(&format!(
                "# e0_diag = {} {} {} {} {} {}\n",
                d(0),
                d(1),
                d(2),
                d(3),
                d(4),
                d(5)
            ));
            let d = |i: usize| fmt(eq.k0[(i, i)]);
            out.push_str(&format!(
                "# k0_diag = {} {} {} {} {} {}\n",
                d(0),
                d(1),
                d(2),
                d(3),
                d(4),
                d(5)
            ));
        }
        out.push_str(&format!("points = {}\n", b.wetted.points.len()));
        for p in &b.wetted.points {
            out.push_str(&format!("{} {}\n", fmt(p.rho), fmt(p.eta)));
        }
    }
    out
}

/// Schema violation in a structure document.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "structure document: {}", self.0)
    }
}

impl std::error::Error for SchemaError {}

fn bad(msg: impl Into<String>) -> SchemaError {
    SchemaError(msg.into())
}

fn parse_f64(s: &str, key: &str) -> Result<f64, SchemaError> {
    s.trim()
        .parse()
        .map_err(|_| bad(format!("{key}: not a number: {s:?}")))
}

fn parse_end(s: &str) -> Result<CurveEnd, SchemaError> {
    let s = s.trim();
    if s == "axis" {
        return Ok(CurveEnd::Axis);
    }
    if s == "infinity" {
        return Ok(CurveEnd::Infinity);
    }
    if let Some(r) = s.strip_prefix("surface ") {
        return Ok(CurveEnd::FreeSurface(parse_f64(r, "curve end")?));
    }
    Err(bad(format!("unrecognized curve end {s:?}")))
}

#[derive(Default)]
struct BodyDraft {
    fields: std::collections::HashMap<String, String>,
    layers: Vec<BallastLayer>,
    points: Vec<FieldPoint>,
}

impl BodyDraft {
    fn take(&mut self, key: &str) -> Result<String, SchemaError> {
        self.fields
            .remove(key)
            .ok_or_else(|| bad(format!("missing key {key:?} in a body section")))
    }

    fn build(mut self) -> Result<BodySection, SchemaError> {
        if self.points.len() < 5 {
            return Err(bad(format!(
                "body geometry needs at least 5 points, got {}",
                self.points.len()
            )));
        }
        let wetted = LevelCurve {
            level: parse_f64(&self.take("level")?, "level")?,
            points: std::mem::take(&mut self.points),
            left_end: parse_end(&self.take("left_end")?)?,
            right_end: parse_end(&self.take("right_end")?)?,
            encloses_ring: self.take("encloses_ring")?.trim() == "1",
        };
        Ok(BodySection {
            wetted,
            waterline_radii: (
                parse_f64(&self.take("waterline_inner")?, "waterline_inner")?,
                parse_f64(&self.take("waterline_outer")?, "waterline_outer")?,
            ),
            superstructure_height: parse_f64(
                &self.take("superstructure_height")?,
                "superstructure_height",
            )?,
            heave: parse_f64(&self.take("heave")?, "heave")?,
            ballast: DensityPlan {
                layers: std::mem::take(&mut self.layers),
                center_of_mass_eta: parse_f64(&self.take("ballast_com_eta")?, "ballast_com_eta")?,
                total_mass: parse_f64(&self.take("ballast_mass")?, "ballast_mass")?,
            },
        })
    }
}

pub fn load(text: &str) -> Result<Structure, SchemaError> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(MAGIC) {
        return Err(bad(format!("first line must be {MAGIC:?}")));
    }
    let mut header = std::collections::HashMap::new();
    let mut drafts: Vec<BodyDraft> = Vec::new();
    let mut pending_points = 0usize;
    for (ln, raw) in lines.enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if pending_points > 0 {
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad(format!("line {}: expected \"rho eta\"", ln + 2)));
            };
            let rho = parse_f64(a, "point rho")?;
            let eta = parse_f64(b, "point eta")?;
            let p = FieldPoint::new(rho, eta)
                .map_err(|e| bad(format!("line {}: {e}", ln + 2)))?;
            drafts.last_mut().unwrap().points.push(p);
            pending_points -= 1;
            continue;
        }
        if line == "[body]" {
            drafts.push(BodyDraft::default());
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(bad(format!("line {}: expected \"key = value\"", ln + 2)));
        };
        let (key, value) = (key.trim(), value.trim());
        match drafts.last_mut() {
            None => {
                header.insert(key.to_string(), value.to_string());
            }
            Some(d) => match key {
                "ballast_layer" => {
                    let v: Vec<f64> = value
                        .split_whitespace()
                        .map(|t| parse_f64(t, "ballast_layer"))
                        .collect::<Result<_, _>>()?;
                    if v.len() != 5 {
                        return Err(bad("ballast_layer needs 5 numbers"));
                    }
                    d.layers.push(BallastLayer {
                        rho: (v[0], v[1]),
                        eta: (v[2], v[3]),
                        density_ratio: v[4],
                    });
                }
                "points" => {
                    pending_points = value
                        .parse()
                        .map_err(|_| bad(format!("bad point count {value:?}")))?;
                }
                _ => {
                    d.fields.insert(key.to_string(), value.to_string());
                }
            },
        }
    }
    if pending_points > 0 {
        return Err(bad("geometry truncated: fewer points than declared"));
    }

    let take = |k: &str| -> Result<String, SchemaError> {
        header
            .get(k)
            .cloned()
            .ok_or_else(|| bad(format!("missing header key {k:?}")))
    };
    let m: u32 = take("m")?
        .parse()
        .map_err(|_| bad("m: not a positive integer"))?;
    let omega = parse_f64(&take("omega")?, "omega")?;
    let g = parse_f64(&take("gravity")?, "gravity")?;
    let mode = ModeParams::new(m, omega, g).map_err(|e| bad(e.to_string()))?;
    let declared: usize = take("bodies")?
        .parse()
        .map_err(|_| bad("bodies: not a count"))?;
    if declared != drafts.len() {
        return Err(bad(format!(
            "header declares {declared} bodies, document has {}",
            drafts.len()
        )));
    }
    if drafts.is_empty() {
        return Err(bad("no body sections"));
    }
    let bodies: Vec<BodySection> = drafts
        .into_iter()
        .map(BodyDraft::build)
        .collect::<Result<_, _>>()?;
    let chi = bodies
        .iter()
        .map(|b| nalgebra::Vector6::new(0.0, 0.0, 0.0, b.heave, 0.0, 0.0))
        .collect();
    Ok(Structure { mode, bodies, chi })
}
