//! JSON and DOT encodings shared by the report builders and the command line.
//!
//! Elements are `{"w": [reduced word], "xi": [ints]}` where the word lists
//! affine node numbers `1..=ℓ` of the finite part. Paths are
//! `{"xs": [element, …], "cuts": ["p/q", …]}`.

use serde::Serializer;
use serde_json::{json, Value};

use crate::cartan::{coords, AffineRoot, RootDatum, Weight};
use crate::components::TranslationPath;
use crate::paths::{LsPath, SilsPath};
use crate::qbg::{QbgEdge, QbgKind, QlsPath};
use crate::sibg::SibEdge;
use crate::weyl::{AffineSystem, AffineWeylElement, Parabolic};
use crate::{Error, Result, Q};

/// Rationals are written as `"p/q"` (or `"p"` when integral).
pub fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q_string(q))
}

pub fn q_string(q: &Q) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    match s.split_once('/') {
        Some((p, q)) => {
            let q = int(q)?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Q::new(int(p)?, q))
        }
        None => Ok(Q::from_integer(int(s)?)),
    }
}

fn ints(v: &Value, what: &str) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("{what} must hold integers"))))
        .collect()
}

fn cut_strings(cuts: &[Q]) -> Vec<String> {
    cuts.iter().map(q_string).collect()
}

fn parse_cuts(v: &Value) -> Result<Vec<Q>> {
    v.get("cuts")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"cuts\" array".into()))?
        .iter()
        .map(|c| match c {
            Value::String(s) => parse_q(s),
            Value::Number(n) => n.as_i64().map(Q::from_integer).ok_or_else(|| Error::Parse(format!("bad cut {n}"))),
            _ => Err(Error::Parse(format!("bad cut {c}"))),
        })
        .collect()
}

pub fn element_json(sys: &AffineSystem, x: &AffineWeylElement) -> Value {
    json!({"w": sys.finite_word(x.w), "xi": &x.xi[..sys.rank()]})
}

/// Reads an element. The word may use any affine nodes `0..=ℓ`; the key
/// `finite` is accepted in place of `w`. The result is `s_{i_1}⋯s_{i_k} t_ξ`.
pub fn parse_element(sys: &AffineSystem, v: &Value) -> Result<AffineWeylElement> {
    let word = v
        .get("w")
        .or_else(|| v.get("finite"))
        .ok_or_else(|| Error::Parse("element needs \"w\"".into()))?;
    let word: Vec<usize> = ints(word, "w")?
        .into_iter()
        .map(|i| usize::try_from(i).map_err(|_| Error::Parse(format!("bad node {i}"))))
        .collect::<Result<_>>()?;
    let xi = match v.get("xi") {
        Some(x) => ints(x, "xi")?,
        None => vec![0; sys.rank()],
    };
    if xi.len() != sys.rank() {
        return Err(Error::Parse(format!("xi must have {} entries", sys.rank())));
    }
    let x = sys.from_affine_word(&word)?;
    Ok(sys.mul(&x, &sys.translation(coords(&xi))))
}

pub fn root_json(d: &RootDatum, b: &AffineRoot) -> Value {
    json!({"gamma": &b.gamma[..d.rank()], "mult": b.mult, "delta": b.delta})
}

pub fn parse_root(d: &RootDatum, v: &Value) -> Result<AffineRoot> {
    let gamma = ints(v.get("gamma").ok_or_else(|| Error::Parse("root needs \"gamma\"".into()))?, "gamma")?;
    if gamma.len() != d.rank() {
        return Err(Error::Parse(format!("gamma must have {} entries", d.rank())));
    }
    let mult = v.get("mult").and_then(Value::as_u64).unwrap_or(1);
    let delta = v.get("delta").and_then(Value::as_i64).unwrap_or(0);
    let b = AffineRoot::new(coords(&gamma), mult as u8, delta);
    d.validate_root(&b)?;
    Ok(b)
}

/// `"2(0,1)+3δ"` style text for a real affine root.
pub fn root_text(d: &RootDatum, b: &AffineRoot) -> String {
    let g: Vec<String> = b.gamma[..d.rank()].iter().map(i64::to_string).collect();
    let mut s = String::new();
    if b.mult != 1 {
        s.push_str(&b.mult.to_string());
    }
    s.push_str(&format!("({})", g.join(",")));
    match b.delta {
        0 => {}
        1 => s.push_str("+δ"),
        -1 => s.push_str("-δ"),
        n if n > 0 => s.push_str(&format!("+{n}δ")),
        n => s.push_str(&format!("{n}δ")),
    }
    s
}

pub fn weight_json(d: &RootDatum, mu: &Weight) -> Value {
    json!({"dynkin": &mu.dynkin[..d.rank()], "delta": mu.delta})
}

pub fn sils_json(sys: &AffineSystem, eta: &SilsPath) -> Value {
    json!({
        "xs": eta.xs.iter().map(|x| element_json(sys, x)).collect::<Vec<_>>(),
        "cuts": cut_strings(&eta.cuts),
    })
}

pub fn parse_sils(sys: &AffineSystem, v: &Value) -> Result<SilsPath> {
    let xs = v
        .get("xs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"xs\" array".into()))?
        .iter()
        .map(|x| parse_element(sys, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SilsPath { xs, cuts: parse_cuts(v)? })
}

pub fn ls_json(d: &RootDatum, pi: &LsPath) -> Value {
    json!({
        "nus": pi.nus.iter().map(|mu| weight_json(d, mu)).collect::<Vec<_>>(),
        "cuts": cut_strings(&pi.cuts),
    })
}

pub fn qls_json(sys: &AffineSystem, pi: &QlsPath) -> Value {
    json!({
        "ws": pi.ws.iter().map(|&w| sys.finite_word(w)).collect::<Vec<_>>(),
        "cuts": cut_strings(&pi.cuts),
    })
}

/// A translation path as the sils path it names.
pub fn translation_path_json(ctx: &Parabolic, p: &TranslationPath) -> Result<Value> {
    let sys = ctx.system();
    let mut v = sils_json(sys, &p.to_sils(ctx)?);
    v["translations"] = json!(p.xis.iter().map(|xi| xi[..sys.rank()].to_vec()).collect::<Vec<_>>());
    Ok(v)
}

fn word_text(sys: &AffineSystem, w: u32) -> String {
    let word = sys.finite_word(w);
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }
}

fn elem_text(sys: &AffineSystem, x: &AffineWeylElement) -> String {
    format!("{} | {:?} | {}", word_text(sys, x.w), &x.xi[..sys.rank()], sys.si_length(x))
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Semi-infinite graph as DOT; vertices are labelled `w | ξ | ℓ^{∞/2}`.
pub fn sib_dot(sys: &AffineSystem, verts: &[AffineWeylElement], edges: &[SibEdge]) -> String {
    let d = sys.datum();
    let id = |x: &AffineWeylElement| verts.binary_search(x).expect("vertex listed");
    let mut out = String::from("digraph sibg {\n");
    for (k, x) in verts.iter().enumerate() {
        out.push_str(&format!("  v{k} [label=\"{}\"];\n", escape(&elem_text(sys, x))));
    }
    for e in edges {
        out.push_str(&format!(
            "  v{} -> v{} [label=\"{}\"];\n",
            id(&e.source),
            id(&e.target),
            escape(&root_text(d, &e.label))
        ));
    }
    out.push_str("}\n");
    out
}

/// Parabolic quantum Bruhat graph as DOT; quantum edges are dashed.
pub fn qbg_dot(ctx: &Parabolic, edges: &[QbgEdge]) -> String {
    let sys = ctx.system();
    let d = sys.datum();
    let mut out = String::from("digraph qbg {\n");
    for &w in ctx.min_reps() {
        out.push_str(&format!("  w{w} [label=\"{}\"];\n", word_text(sys, w)));
    }
    for e in edges {
        let style = match e.kind {
            QbgKind::Bruhat => "solid",
            QbgKind::Quantum => "dashed",
        };
        out.push_str(&format!(
            "  w{} -> w{} [label=\"{}\", style={style}];\n",
            e.source,
            e.target,
            escape(&root_text(d, &AffineRoot::finite(*d.root(e.label))))
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{AffineType, Family};

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "1", "1/2", "-3/4"] {
            assert_eq!(q_string(&parse_q(s).unwrap()), s);
        }
        assert_eq!(q_string(&parse_q("2/4").unwrap()), "1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn elements_round_trip() {
        let sys = AffineSystem::new(AffineType::new(Family::Dlp12, 3).unwrap()).unwrap();
        for w in sys.weyl().elements() {
            let x = AffineWeylElement { w, xi: coords(&[1, -2, 0]) };
            assert_eq!(parse_element(&sys, &element_json(&sys, &x)).unwrap(), x);
        }
        let s0 = parse_element(&sys, &json!({"finite": [0]})).unwrap();
        assert_eq!(s0, sys.simple_reflection(0).unwrap());
    }

    #[test]
    fn root_text_shapes() {
        let sys = AffineSystem::new(AffineType::new(Family::A2l2, 1).unwrap()).unwrap();
        let d = sys.datum();
        assert_eq!(root_text(d, &AffineRoot::new(coords(&[-1]), 2, 1)), "2(-1)+δ");
        assert_eq!(root_text(d, &AffineRoot::new(coords(&[1]), 1, 0)), "(1)");
        let b = parse_root(d, &json!({"gamma": [-1], "mult": 2, "delta": 1})).unwrap();
        assert_eq!(root_json(d, &b), json!({"gamma": [-1], "mult": 2, "delta": 1}));
    }
}
