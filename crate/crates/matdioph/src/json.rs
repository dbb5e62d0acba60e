//! JSON encodings of the core types.
//!
//! Integers are written as JSON numbers of arbitrary length, never as
//! strings, and object keys keep insertion order so output is stable.

use matdioph_core::families::{FamilyShape, LinearForm, SolutionPair};
use matdioph_core::numtheory::{PellSolution, UvSolutions};
use matdioph_core::oracle::OracleCounts;
use matdioph_core::solver::{FrameReduction, NoncommHit, Payload, SideReport};
use matdioph_core::{EquationSpec, FamilyDescriptor, Mat2, SolvabilityReport};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

pub fn int(n: &BigInt) -> Value {
    // with arbitrary_precision any decimal string is a valid Number
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

pub fn mat(m: &Mat2) -> Value {
    json!([[int(&m.e11), int(&m.e12)], [int(&m.e21), int(&m.e22)]])
}

pub fn spec(s: &EquationSpec) -> Value {
    let mut o = Map::new();
    o.insert("a".into(), int(&s.a));
    o.insert("b".into(), int(&s.b));
    o.insert("c".into(), int(&s.c));
    o.insert("m".into(), json!(s.m));
    o.insert("n".into(), json!(s.n));
    if let Some(l) = &s.lambda {
        o.insert("lambda".into(), int(l));
    }
    Value::Object(o)
}

fn abc(a: &BigInt, b: &BigInt, c: &BigInt) -> Value {
    json!({"a": int(a), "b": int(b), "c": int(c)})
}

/// `{"tag": ..., "params": {...}}` with the variant's own field names.
pub fn family(f: &FamilyDescriptor) -> Value {
    use FamilyDescriptor::*;
    let params = match f {
        ScalarPair { a, b, c }
        | ScalarTracelessRight { a, b, c }
        | ScalarTracelessLeft { a, b, c }
        | NonCommTraceless { a, b, c } => abc(a, b, c),
        PellParametrized(p) => json!({
            "u": int(&p.u),
            "v": int(&p.v),
            "g": int(&p.g),
            "a": int(&p.a),
            "b": int(&p.b),
            "c": int(&p.c),
        }),
        NonCommQuartic { c } => json!({ "c": int(c) }),
        DiagonalRhs { a, b, m, n, c1, c2 } => json!({
            "a": int(a),
            "b": int(b),
            "m": m,
            "n": n,
            "c1": int(c1),
            "c2": int(c2),
        }),
    };
    json!({"tag": f.tag(), "params": params})
}

fn forms(f: &[LinearForm; 4]) -> Value {
    let s: Vec<String> = f.iter().map(ToString::to_string).collect();
    json!([[s[0], s[1]], [s[2], s[3]]])
}

/// Entry formulas in `t1..t4`, e.g. `"-7t1+12t4"`.
pub fn shape(s: &FamilyShape) -> Value {
    json!({"x": forms(&s.x), "y": forms(&s.y)})
}

/// One oracle line: `{"x", "y", "family", "commuting", "nontrivial"}`.
pub fn solution(p: &SolutionPair) -> Value {
    json!({
        "x": mat(&p.x),
        "y": mat(&p.y),
        "family": p.family.as_ref().map_or(Value::Null, family),
        "commuting": p.commuting,
        "nontrivial": p.nontrivial,
    })
}

pub fn verification(p: &SolutionPair, eigen: bool) -> Value {
    json!({
        "x": mat(&p.x),
        "y": mat(&p.y),
        "satisfied": p.satisfied,
        "family": p.family.as_ref().map_or(Value::Null, family),
        "commuting": p.commuting,
        "nontrivial": p.nontrivial,
        "eigen_condition": eigen,
    })
}

fn hit(h: &NoncommHit) -> Value {
    json!({
        "k": h.k,
        "l": h.l,
        "alpha": int(&h.alpha),
        "beta": int(&h.beta),
        "x": mat(&h.x),
        "y": mat(&h.y),
    })
}

fn frame(f: &FrameReduction) -> Value {
    json!({"e": int(&f.e), "f": int(&f.f), "g": int(&f.g), "d": int(&f.d), "k": int(&f.k)})
}

pub fn payload(p: &Payload) -> Value {
    match p {
        Payload::None => Value::Null,
        Payload::Families { families, complete } => json!({
            "kind": "families",
            "families": families.iter().map(family).collect::<Vec<_>>(),
            "complete": complete,
        }),
        Payload::ScalarPowers(hits) => json!({
            "kind": "scalar_powers",
            "hits": hits.iter().map(hit).collect::<Vec<_>>(),
        }),
        Payload::Reduction(frames) => json!({
            "kind": "reduction",
            "frames": frames.iter().map(frame).collect::<Vec<_>>(),
        }),
        Payload::Certificate(axioms) => json!({
            "kind": "certificate",
            "axioms": axioms.iter().map(|a| a.name()).collect::<Vec<_>>(),
        }),
    }
}

fn side(s: &SideReport) -> Value {
    json!({
        "side": s.side.name(),
        "verdict": s.verdict.name(),
        "citation": s.citation,
        "payload": payload(&s.payload),
    })
}

pub fn report(r: &SolvabilityReport) -> Value {
    json!({
        "verdict": r.verdict.name(),
        "citation": r.citation,
        "payload": payload(&r.payload),
        "sides": r.sides.iter().map(side).collect::<Vec<_>>(),
    })
}

pub fn counts(c: &OracleCounts) -> Value {
    json!({
        "total": c.total(),
        "commuting_nontrivial": c.commuting_nontrivial,
        "commuting_trivial": c.commuting_trivial,
        "noncommuting_nontrivial": c.noncommuting_nontrivial,
        "noncommuting_trivial": c.noncommuting_trivial,
    })
}

pub fn pell(p: &PellSolution) -> Value {
    json!({"u": int(&p.u), "v": int(&p.v)})
}

pub fn uv(a: &BigInt, b: &BigInt, c: &BigInt, sols: &UvSolutions) -> Value {
    let pairs: Vec<Value> = sols
        .pairs
        .iter()
        .map(|(u, v)| json!({"u": int(u), "v": int(v)}))
        .collect();
    json!({
        "a": int(a),
        "b": int(b),
        "c": int(c),
        "pairs": pairs,
        "complete": sols.complete,
    })
}
