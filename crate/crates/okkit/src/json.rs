//! JSON shapes of bodies, families and slices, and the fixed float format.
//!
//! Rationals are `[num, den]` pairs. Floats are written with 17 significant
//! digits in exponent form so that output is byte-stable across runs.

use std::io;

use okkit_core::algebra::{rational_parts, BiDegree, Complex64, Rational};
use okkit_core::degeneration::FamilyPresentation;
use okkit_core::okounkov::{Facet, OkounkovBody, SliceResult, ValueSemigroup};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

/// Pretty formatter that prints every float as `{:.16e}`.
struct FixedFloats<'a>(PrettyFormatter<'a>);

fn write_fixed<W: ?Sized + io::Write>(w: &mut W, x: f64) -> io::Result<()> {
    if x.is_finite() {
        write!(w, "{x:.16e}")
    } else {
        w.write_all(b"null")
    }
}

impl Formatter for FixedFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, x: f64) -> io::Result<()> {
        write_fixed(w, x)
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, x: f32) -> io::Result<()> {
        write_fixed(w, x as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Renders a value with the fixed float format and a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloats(PrettyFormatter::new()));
    serde::Serialize::serialize(v, &mut ser).expect("serializing a Value into memory cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// `[num, den]`; parts beyond `i64` are written as decimal strings.
pub fn rational(q: &Rational) -> Value {
    match rational_parts(q) {
        Some((n, d)) => json!([n, d]),
        None => json!([q.numer().to_string(), q.denom().to_string()]),
    }
}

pub fn point(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn complex(z: &Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn bidegree(b: &BiDegree) -> Value {
    let mut v = vec![json!(b.level)];
    v.extend(b.value.entries().iter().map(|x| json!(x)));
    Value::Array(v)
}

fn facet(f: &Facet) -> Value {
    json!({ "normal": point(&f.normal), "offset": rational(&f.offset) })
}

/// `{ dim, vertices, facets, volume }`, plus `equations` and `affine_dim`
/// when the body is not full-dimensional.
pub fn body(b: &OkounkovBody) -> Value {
    let mut v = json!({
        "dim": b.dim(),
        "vertices": b.vertices().iter().map(|x| point(x)).collect::<Vec<_>>(),
        "facets": b.facets().iter().map(facet).collect::<Vec<_>>(),
        "volume": rational(b.volume()),
    });
    if !b.is_full_dimensional() {
        v["affine_dim"] = json!(b.affine_dim());
        v["equations"] = Value::Array(b.equations().iter().map(facet).collect());
    }
    v
}

pub fn semigroup(s: &ValueSemigroup) -> Value {
    Value::Array(s.canonical_generators().iter().map(bidegree).collect())
}

pub fn family(name: &str, fam: &FamilyPresentation) -> Value {
    let rels = fam.relations();
    let relations: Vec<Value> = rels
        .relations()
        .iter()
        .zip(fam.family())
        .zip(fam.initial_forms())
        .zip(rels.levels())
        .zip(fam.levels())
        .map(|((((g, gt), init), level), top)| {
            json!({
                "relation": g.to_string(),
                "level": level,
                "top_weight": top,
                "family": gt.to_string(),
                "initial_form": init.to_string(),
            })
        })
        .collect();
    json!({
        "entry": name,
        "symbols": fam.symbols().vars(),
        "symbol_degrees": rels.degrees().iter().map(bidegree).collect::<Vec<_>>(),
        "parameter": okkit_core::degeneration::FAMILY_PARAMETER,
        "projection": fam.projection().p,
        "weights": fam.weights(),
        "relations": relations,
    })
}

pub fn slice(s: &SliceResult) -> Value {
    json!({
        "semigroup": semigroup(&s.semigroup),
        "body": body(&s.body),
        "bound": s.bound,
        "complete": s.complete,
    })
}
