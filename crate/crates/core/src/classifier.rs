//! Decides which complex cobordism classes of dimension 2, 4, 6 and (partly) 8
//! contain a smooth projective toric variety, and synthesizes witnesses.

use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::chern::{chern_numbers, todd_genus, ChernVector};
use crate::constructions::{fit_kleinschmidt_polynomials, ChernPolynomials, Family, FamilySpec};
use crate::error::{Error, Result};
use crate::face_vectors::feasible_g_for;
use crate::fan::{Cone, Fan};
use crate::ktheory::{hattori_stong_check, HattoriStong};
use crate::linalg::{rat, Rat};

pub const FRONTIER_G1_TWO: &str = "Ω₈ g₁=2 Batyrev region";
pub const FRONTIER_OUTSIDE: &str = "Ω₈ outside asymp region";
pub const FRONTIER_SCAN: &str = "Ω₈ g₁=1 scan bound";
pub const FRONTIER_SIZE: &str = "witness exceeds size bounds";
pub const CP4_CERTIFICATE: &str = "g₁=0 forces ℂP⁴, c₁⁴ ≠ 625";
pub const G123_CERTIFICATE: &str = "no smooth projective toric variety has g=(1,2,3)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    NotRepresentable,
    Representable,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::NotRepresentable => "NotRepresentable",
            Status::Representable => "Representable",
            Status::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// A toric representative together with its recomputed Chern numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub spec: FamilySpec,
    pub fan: Fan,
    pub chern: ChernVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub reason: String,
    pub witness: Option<Witness>,
    pub frontier: Option<String>,
}

impl Verdict {
    fn negative(reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::NotRepresentable,
            reason: reason.into(),
            witness: None,
            frontier: None,
        }
    }

    fn unknown(frontier: &str, reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Unknown,
            reason: reason.into(),
            witness: None,
            frontier: Some(frontier.to_string()),
        }
    }

    fn representable(witness: Witness, reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Representable,
            reason: reason.into(),
            witness: Some(witness),
            frontier: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "status": self.status.to_string(), "reason": self.reason });
        if let Some(w) = &self.witness {
            v["witness"] = json!({
                "spec": w.spec.to_json(),
                "fan": serde_json::to_value(w.fan.to_json()).expect("fan serializes"),
                "chern": w.chern.to_json(),
            });
        }
        if let Some(f) = &self.frontier {
            v["frontier"] = json!(f);
        }
        v
    }
}

/// Builds the witness and checks that it has exactly the queried Chern
/// numbers. `Ok(None)` means the construction ran into the size bounds.
fn synthesize(spec: FamilySpec, query: &ChernVector) -> Result<Option<Witness>> {
    let fan = match spec.build() {
        Ok(f) => f,
        Err(Error::SizeLimit { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let chern = chern_numbers(&fan)?;
    if &chern != query {
        return Err(Error::ValidationFailed(format!(
            "witness {} has Chern numbers {} instead of {}",
            spec.to_json(),
            chern.to_json(),
            query.to_json()
        )));
    }
    Ok(Some(Witness { spec, fan, chern }))
}

/// Appends `k` subdivisions of the lexicographically first maximal cone.
fn with_vertex_blowups(family: Family, k: usize) -> Result<FamilySpec> {
    let mut spec = FamilySpec::new(family);
    let mut fan = spec.build()?;
    for _ in 0..k {
        let cone = fan.max_cones()[0].clone();
        fan = fan.star_subdivide(&cone)?;
        spec.blowups.push(cone);
    }
    Ok(spec)
}

fn representable_or_oversized(
    spec: FamilySpec,
    query: &ChernVector,
    reason: String,
) -> Result<Verdict> {
    Ok(match synthesize(spec, query)? {
        Some(w) => Verdict::representable(w, reason),
        None => Verdict::unknown(FRONTIER_SIZE, reason),
    })
}

/// Complex dimension 1.
pub fn classify_omega2(c1: i64) -> Result<Verdict> {
    if c1 != 2 {
        return Ok(Verdict::negative(format!(
            "Todd genus c1/2 = {} ≠ 1",
            Rat::new(c1.into(), 2.into())
        )));
    }
    let query = ChernVector::from_values(1, &[c1])?;
    representable_or_oversized(FamilySpec::new(Family::Cpn { n: 1 }), &query, "ℂP¹".into())
}

/// Complex dimension 2.
pub fn classify_omega4(c1sq: i64, c2: i64) -> Result<Verdict> {
    let query = ChernVector::from_values(2, &[c1sq, c2])?;
    let td = todd_genus(&query);
    if td != rat(1) {
        return Ok(Verdict::negative(format!(
            "Todd genus (c1^2 + c2)/12 = {td} ≠ 1"
        )));
    }
    if c2 < 3 {
        return Ok(Verdict::negative(format!("c2 = {c2} < 3 maximal cones")));
    }
    let k = (c2 - 3) as usize;
    if k + 3 > crate::fan::MAX_RAYS {
        return Ok(Verdict::unknown(
            FRONTIER_SIZE,
            format!("{k} blow-ups of ℂP²"),
        ));
    }
    let spec = with_vertex_blowups(Family::Cpn { n: 2 }, k)?;
    representable_or_oversized(spec, &query, format!("ℂP² blown up at {k} fixed point(s)"))
}

fn hattori_stong_failure(cv: &ChernVector) -> Option<String> {
    match hattori_stong_check(cv) {
        HattoriStong::Pass => None,
        HattoriStong::Fail(bad) => {
            let (omega, value) = &bad[0];
            Some(format!(
                "K-theory characteristic number κ_{{{omega}}} = {value} is not an integer"
            ))
        }
    }
}

fn exact_sqrt(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let r = (x as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s >= 0 && s * s == x)
}

/// Complex dimension 3.
pub fn classify_omega6(c13: i64, c1c2: i64, c3: i64) -> Result<Verdict> {
    let query = ChernVector::from_values(3, &[c13, c1c2, c3])?;
    if let Some(why) = hattori_stong_failure(&query) {
        return Ok(Verdict::negative(why));
    }
    if c1c2 != 24 {
        return Ok(Verdict::negative(format!(
            "c1*c2 = {c1c2}, but every toric threefold has c1*c2 = 24"
        )));
    }
    if c3 < 4 || c3 % 2 != 0 {
        return Ok(Verdict::negative(format!(
            "c3 = {c3} is not 2*g1 + 4 with g1 ≥ 0"
        )));
    }
    match c3 {
        4 => {
            if c13 != 64 {
                return Ok(Verdict::negative(format!(
                    "c3 = 4 forces ℂP³, c1^3 = {c13} ≠ 64"
                )));
            }
            representable_or_oversized(FamilySpec::new(Family::Cpn { n: 3 }), &query, "ℂP³".into())
        }
        6 => {
            let root = if (c13 - 54) % 2 == 0 {
                exact_sqrt((c13 - 54) / 2)
            } else {
                None
            };
            let Some(a) = root else {
                return Ok(Verdict::negative(format!(
                    "c3 = 6 needs c1^3 = 2a^2 + 54, but c1^3 = {c13}"
                )));
            };
            let spec = FamilySpec::new(Family::Kleinschmidt { n: 3, a: vec![a] });
            representable_or_oversized(spec, &query, format!("Kleinschmidt fan with a = {a}"))
        }
        _ => {
            let k = (c3 - 8) / 2;
            let a = (c13 - 48 + 8 * k) / 2;
            if 6 + k as usize > crate::fan::MAX_RAYS {
                return Ok(Verdict::unknown(
                    FRONTIER_SIZE,
                    format!("{k} blow-ups of Σ({a})"),
                ));
            }
            let spec = with_vertex_blowups(Family::SigmaA { a }, k as usize)?;
            representable_or_oversized(
                spec,
                &query,
                format!("Σ({a}) blown up at {k} fixed point(s)"),
            )
        }
    }
}

/// Applies `e` subdivisions of 3-cones and then `v` of maximal cones to a Δ
/// fan, each time at the lexicographically first such cone containing `v1`
/// (so away from the twisted ray `v2`).
fn subdivision_sequence(fan: &Fan, e: usize, v: usize) -> Result<(Fan, Vec<Cone>)> {
    const V1: usize = 6;
    let mut fan = fan.clone();
    let mut cones = Vec::new();
    for step in 0..e + v {
        let size = if step < e { 3 } else { 4 };
        let all = fan.all_cones();
        let cone = all[size]
            .iter()
            .find(|c| c.contains(V1))
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("no {size}-cone contains v1")))?;
        fan = fan.star_subdivide(&cone)?;
        cones.push(cone);
    }
    Ok((fan, cones))
}

fn kleinschmidt_x4() -> &'static [Option<ChernPolynomials>] {
    static FITS: OnceLock<Vec<Option<ChernPolynomials>>> = OnceLock::new();
    FITS.get_or_init(|| {
        (1..=3)
            .map(|r| fit_kleinschmidt_polynomials(4, r, 4).ok().flatten())
            .collect()
    })
}

/// Outcome of matching a Chern vector against one Kleinschmidt family.
enum ScanResult {
    Hit(Vec<i64>),
    /// no member matches, with the bound that makes this conclusive
    Miss(String),
    Inconclusive(String),
}

/// Rewrites `p(a)` with `a_i = d_1 + ⋯ + d_i`, so that weakly increasing
/// nonnegative parameters correspond to nonnegative `d`.
fn in_increments(p: &crate::constructions::Poly, r: usize) -> crate::constructions::Poly {
    use crate::constructions::Poly;
    let mul = |x: &Poly, y: &Poly| -> Poly {
        let mut out = Poly::new();
        for (ex, cx) in x {
            for (ey, cy) in y {
                let e: Vec<u32> = ex.iter().zip(ey).map(|(a, b)| a + b).collect();
                *out.entry(e).or_insert_with(Rat::zero) += cx * cy;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let unit = |i: usize| -> Vec<u32> { (0..r).map(|j| u32::from(i == j)).collect() };
    let one: Poly = [(vec![0; r], rat(1))].into_iter().collect();
    let mut out = Poly::new();
    for (e, c) in p {
        let mut term: Poly = [(vec![0; r], c.clone())].into_iter().collect();
        for (i, &k) in e.iter().enumerate() {
            let a_i: Poly = (0..=i).map(|j| (unit(j), rat(1))).collect();
            let mut pw = one.clone();
            for _ in 0..k {
                pw = mul(&pw, &a_i);
            }
            term = mul(&term, &pw);
        }
        for (e2, c2) in term {
            *out.entry(e2).or_insert_with(Rat::zero) += c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// A Chern number whose polynomial, minus its constant term, is at least
/// `a_r` on weakly increasing nonnegative parameters: all coefficients in
/// the increments are nonnegative and every active increment has a pure
/// power with coefficient at least 1.
fn growth_certificate(polys: &ChernPolynomials) -> Option<usize> {
    let active = polys.active_vars();
    polys.polys.iter().position(|p| {
        let q = in_increments(p, polys.r);
        let nonneg = q.values().all(|c| c >= &Rat::zero());
        let pure = active.iter().all(|&i| {
            q.iter().any(|(e, c)| {
                c >= &rat(1) && e[i] > 0 && e.iter().enumerate().all(|(j, &k)| j == i || k == 0)
            })
        });
        nonneg && pure
    })
}

fn scan_family(polys: &ChernPolynomials, cv: &ChernVector) -> ScanResult {
    let target: Vec<Rat> = polys
        .keys
        .iter()
        .map(|k| rat(cv.get(k).unwrap_or(0)))
        .collect();
    let active = polys.active_vars();
    let r = polys.r;
    let magnitude = cv
        .to_vec()
        .iter()
        .map(|x| x.unsigned_abs())
        .max()
        .unwrap_or(0) as i64;
    let fallback = 2 + magnitude;
    let (bound, conclusive) = match growth_certificate(polys) {
        Some(i) if !active.is_empty() => {
            let base = crate::constructions::poly_eval(&polys.polys[i], &vec![0; r]);
            let slack = &target[i] - base;
            let b = slack
                .to_integer()
                .try_into()
                .unwrap_or(i64::MAX)
                .clamp(0, fallback);
            (b, slack.to_integer() <= fallback.into())
        }
        Some(_) => (0, true),
        None => (fallback, false),
    };
    // Parameters that occur in no polynomial copy their predecessor.
    let mut a = vec![0i64; r];
    fn rec(
        i: usize,
        a: &mut Vec<i64>,
        active: &[usize],
        bound: i64,
        polys: &ChernPolynomials,
        target: &[Rat],
    ) -> Option<Vec<i64>> {
        if i == a.len() {
            return (polys.evaluate(a) == target).then(|| a.clone());
        }
        let lo = if i == 0 { 0 } else { a[i - 1] };
        let hi = if active.contains(&i) { bound } else { lo };
        for x in lo..=hi.max(lo) {
            a[i] = x;
            if let Some(hit) = rec(i + 1, a, active, bound, polys, target) {
                return Some(hit);
            }
        }
        None
    }
    match rec(0, &mut a, &active, bound, polys, &target) {
        Some(hit) => ScanResult::Hit(hit),
        None if conclusive => {
            ScanResult::Miss(format!("no Kleinschmidt fan with {r} parameter(s) up to {bound} matches"))
        }
        None => ScanResult::Inconclusive(format!(
            "no Kleinschmidt fan with {r} parameter(s) up to {bound} matches; larger parameters not excluded"
        )),
    }
}

/// The Chern vector of ℂP⁴.
pub const CP4: [i64; 5] = [625, 250, 100, 50, 5];

/// Complex dimension 4 (partial: some regions stay undecided).
pub fn classify_omega8(cv: &ChernVector) -> Result<Verdict> {
    if cv.dim() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected a Chern vector of dimension 4, got {}",
            cv.dim()
        )));
    }
    if let Some(why) = hattori_stong_failure(cv) {
        return Ok(Verdict::negative(why));
    }
    let feasible = feasible_g_for(cv)?;
    if feasible.is_empty() {
        return Ok(Verdict::negative(
            "no g-vector satisfies the g-theorem together with the Chern-number relations of toric fourfolds",
        ));
    }
    let mut negatives: Vec<String> = Vec::new();
    let mut open: Vec<(&'static str, String)> = Vec::new();
    let mut remaining = Vec::new();
    for g in &feasible {
        let (g1, g2) = (g[1], g[2]);
        if g1 == 0 {
            if cv.to_vec() == CP4 {
                return representable_or_oversized(
                    FamilySpec::new(Family::Cpn { n: 4 }),
                    cv,
                    "ℂP⁴".into(),
                );
            }
            negatives.push(CP4_CERTIFICATE.to_string());
        } else if (g1, g2) == (2, 3) {
            negatives.push(G123_CERTIFICATE.to_string());
        } else {
            remaining.push(g.clone());
        }
    }
    // asymptotic region
    if let Some(g) = remaining.iter().find(|g| 2 <= g[2] && g[2] < g[1]) {
        let e = (g[2] - 2) as usize;
        let v = (g[1] - g[2] - 1) as usize;
        if 8 + e + v > crate::fan::MAX_RAYS {
            return Ok(Verdict::unknown(
                FRONTIER_SIZE,
                format!("g = {g:?} needs {} rays", 8 + e + v),
            ));
        }
        let base = crate::constructions::delta_ab(0, 0)?;
        let before = chern_numbers(&base)?;
        let (after_fan, _) = subdivision_sequence(&base, e, v)?;
        let after = chern_numbers(&after_fan)?;
        let d22 = after.value(&[2, 2]) - before.value(&[2, 2]);
        let d112 = after.value(&[2, 1, 1]) - before.value(&[2, 1, 1]);
        let a = 96 + d22 - cv.value(&[2, 2]);
        let num = cv.value(&[2, 1, 1]) - d112 - 188 + 6 * a;
        if num % 4 != 0 {
            return Err(Error::ValidationFailed(format!(
                "Δ(a, b) synthesis: 4 ∤ {num} for g = {g:?}"
            )));
        }
        let b = num / 4;
        let fan = crate::constructions::delta_ab(a, b)?;
        let (_, cones) = subdivision_sequence(&fan, e, v)?;
        let spec = FamilySpec {
            family: Family::DeltaAB { a, b },
            blowups: cones,
        };
        let reason = format!("Δ({a}, {b}) with {e} curve and {v} point blow-up(s), g = {g:?}");
        return representable_or_oversized(spec, cv, reason);
    }
    let mut rest = Vec::new();
    for g in remaining {
        if g[1] != 1 {
            rest.push(g);
            continue;
        }
        let mut any_inconclusive = None;
        let mut misses = Vec::new();
        for polys in kleinschmidt_x4() {
            let Some(polys) = polys else {
                any_inconclusive =
                    Some("a Kleinschmidt family could not be interpolated".to_string());
                continue;
            };
            match scan_family(polys, cv) {
                ScanResult::Hit(a) => {
                    let spec = FamilySpec::new(Family::Kleinschmidt { n: 4, a: a.clone() });
                    return representable_or_oversized(
                        spec,
                        cv,
                        format!("Kleinschmidt fan with a = {a:?}"),
                    );
                }
                ScanResult::Miss(why) => misses.push(why),
                ScanResult::Inconclusive(why) => any_inconclusive = Some(why),
            }
        }
        match any_inconclusive {
            Some(why) => open.push((FRONTIER_SCAN, why)),
            None => negatives.push(format!(
                "g = {g:?} forces a Kleinschmidt fan: {}",
                misses.join(", ")
            )),
        }
    }
    for g in rest {
        let tag = if g[1] == 2 {
            FRONTIER_G1_TWO
        } else {
            FRONTIER_OUTSIDE
        };
        open.push((tag, format!("feasible g = {g:?}")));
    }
    if let Some((tag, why)) = open.into_iter().next() {
        return Ok(Verdict::unknown(tag, why));
    }
    Ok(Verdict::negative(negatives.join("; ")))
}

/// Dispatches on the dimension of the Chern vector.
pub fn classify(cv: &ChernVector) -> Result<Verdict> {
    let v = cv.to_vec();
    match cv.dim() {
        1 => classify_omega2(v[0]),
        2 => classify_omega4(v[0], v[1]),
        3 => classify_omega6(v[0], v[1], v[2]),
        4 => classify_omega8(cv),
        n => Err(Error::InvalidInput(format!(
            "classification covers dimensions 1 to 4, not {n}"
        ))),
    }
}
