//! JSON forms of library values. Words are written in the alphabet of their shift.

use serde_json::{json, Map, Value};
use sofic_core::decision::{
    AccompanyingMap, CheckReport, ChainVerdict, ChainWitness, Closing, DecisionConstants, PeriodicMap, PsiMinus, PsiPlus,
};
use sofic_core::oracle::OracleResult;
use sofic_core::pumping::PsiTrace;
use sofic_core::shift::format_word;
use sofic_core::{AsymptoticTriple, BlockMap, ClassId, SoficError, SoficShift};

pub const SCHEMA_VERSION: u32 = 1;

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Readings of the decision procedure where the underlying text is ambiguous or
/// inconsistent. Listed in every decision report.
pub const NORMALIZATIONS: &[&str] = &[
    "power exponents Q + R are read as Q*R + R, the stabilized exponent",
    "block residues are measured from the start of a+(n) using l(c(n+1)) and subtracting l(u)",
    "u is taken as u(target a+(n), target a-(n+1))",
    "remainder sets range over k <= K",
    "the accompanying map has a nonempty domain",
    "every H-circ without an explicit k is H-circ(X, 1)",
    "factor chains close to a(-) with an empty middle word and start and end offsets 0",
    "Omega-plus and Omega-minus use periodic words of length at most the capped H",
];

pub struct Fmt<'a> {
    pub alphabet: &'a [String],
}

impl<'a> Fmt<'a> {
    pub fn of(shift: &'a SoficShift) -> Self {
        Fmt { alphabet: shift.alphabet() }
    }

    pub fn word(&self, w: &[u16]) -> Value {
        Value::String(format_word(self.alphabet, w))
    }

    pub fn triple(&self, t: &AsymptoticTriple) -> Value {
        json!({ "a_minus": self.word(&t.a_minus), "c": self.word(&t.c), "a_plus": self.word(&t.a_plus) })
    }
}

pub fn with_version(report: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("report".into(), json!(report));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    Value::Object(out)
}

pub fn error_kind(e: &SoficError) -> &'static str {
    match e {
        SoficError::Malformed(_) => "malformed",
        SoficError::UnknownSymbol(_) => "unknown_symbol",
        SoficError::EmptyLanguage => "empty_language",
        SoficError::NotTransitive => "not_transitive",
        SoficError::Inadmissible => "inadmissible",
        SoficError::Precondition(_) => "precondition",
        SoficError::NotSynchronizing => "not_synchronizing",
        SoficError::NotACycleLength { .. } => "not_a_cycle_length",
        SoficError::NotConjugate => "not_conjugate",
        SoficError::PeriodicPoint => "periodic_point",
        SoficError::NotTotal(_) => "not_total",
        SoficError::FiniteShift => "finite_shift",
        SoficError::EntropyPrecondition => "entropy_precondition",
        SoficError::PeriodicPointPrecondition => "periodic_point_precondition",
        SoficError::AperiodicityPrecondition => "aperiodicity_precondition",
        SoficError::Internal(_) => "internal",
        SoficError::ResourceExceeded(_) => "resource_exceeded",
    }
}

/// Entropies are reported to 1e-9.
pub fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

pub fn class(c: ClassId) -> Value {
    json!(c.0)
}

pub fn constants(c: &DecisionConstants) -> Value {
    json!({
        "v_x": c.v_x,
        "v_bar": c.v_bar,
        "v_circ_x": c.v_circ_x,
        "h_circ_x": c.h_circ_x,
        "t_circ": c.t_circ,
        "h_formula": c.h_formula,
        "h": c.h,
        "t": c.t,
        "rho": c.rho,
    })
}

/// `u128` bounds can exceed what JSON readers hold exactly, so they are strings.
pub fn big(n: u128) -> Value {
    Value::String(n.to_string())
}

pub fn periodic_map(src: &Fmt, dst: &Fmt, phi: &PeriodicMap) -> Value {
    let orbits: Vec<Value> =
        phi.orbits().iter().map(|(a, b)| json!({ "source": src.word(a), "target": dst.word(b) })).collect();
    json!({ "h": phi.h(), "orbits": orbits })
}

pub fn accompanying_map(src: &Fmt, dst: &Fmt, psi: &AccompanyingMap) -> Value {
    let rows: Vec<Value> = psi
        .table()
        .iter()
        .map(|(s, e)| json!({ "source": src.triple(s), "target": dst.triple(&e.target), "t": e.t }))
        .collect();
    Value::Array(rows)
}

pub fn psi_flanks(src: &Fmt, minus: &PsiMinus, plus: &PsiPlus) -> Value {
    let m: Vec<Value> = minus
        .iter()
        .map(|((g, a), gb)| json!({ "gamma": class(*g), "a": src.word(a), "gamma_bar": class(*gb) }))
        .collect();
    let p: Vec<Value> = plus
        .iter()
        .map(|((a, g), gb)| json!({ "a": src.word(a), "gamma": class(*g), "gamma_bar": class(*gb) }))
        .collect();
    json!({ "psi_minus": m, "psi_plus": p })
}

fn witness(src: &Fmt, w: &ChainWitness) -> Value {
    let blocks: Vec<Value> = w
        .blocks
        .iter()
        .map(|b| {
            Value::Array(b.iter().map(|(t, r)| json!({ "triple": src.triple(t), "r": r })).collect())
        })
        .collect();
    let closing = match &w.closing {
        Closing::Triple(t) => json!({ "triple": src.triple(t) }),
        Closing::End { a_minus, gamma_plus } => json!({ "a_minus": src.word(a_minus), "gamma_plus": class(*gamma_plus) }),
    };
    json!({
        "gamma_minus": w.gamma_minus.map(class),
        "blocks": blocks,
        "closing": closing,
        "r_bar": w.r_bar,
    })
}

pub fn verdict(src: &Fmt, v: &ChainVerdict) -> Value {
    match v {
        ChainVerdict::Holds { exhaustive, states } => json!({ "kind": "holds", "exhaustive": exhaustive, "states": states }),
        ChainVerdict::Fails(w) => json!({ "kind": "fails", "witness": witness(src, w) }),
        ChainVerdict::ResourceExceeded { states, blocks } => {
            json!({ "kind": "resource_exceeded", "states": states, "blocks": blocks })
        }
    }
}

pub fn check(src: &Fmt, c: &CheckReport) -> Value {
    json!({
        "verdict": verdict(src, &c.verdict),
        "rho_bar": c.rho_bar,
        "nu": c.nu,
        "nu_phi": c.nu_phi,
        "k_bound": big(c.k_bound),
        "n_bound": big(c.n_bound),
        "k_cap": big(c.k_cap),
        "n_cap": big(c.n_cap),
    })
}

pub fn block_map(src: &Fmt, m: &BlockMap) -> Value {
    let table: Vec<Value> = m
        .table()
        .iter()
        .map(|(b, s)| json!({ "block": src.word(b), "image": m.target_alphabet()[*s as usize] }))
        .collect();
    json!({ "window": m.window(), "table": table })
}

pub fn oracle(src: &Fmt, r: &OracleResult) -> Value {
    json!({
        "window": r.window,
        "exhausted": r.exhausted,
        "found": r.found.iter().map(|m| block_map(src, m)).collect::<Vec<_>>(),
    })
}

pub fn psi_trace(f: &Fmt, trace: &PsiTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "delta": class(s.window.delta),
                "i": s.pump.i,
                "i_prime": s.pump.i_prime,
                "m": s.pump.m,
                "j": s.window.j,
                "j_prime": s.window.j_prime,
                "replacement": f.word(&s.replacement),
                "result": f.word(&s.result),
            })
        })
        .collect();
    json!({ "output": f.word(&trace.output), "steps": steps })
}
