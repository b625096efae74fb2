//! JSON encodings of library objects. Objects are `serde_json` maps, which
//! keep keys sorted, so reports are canonical.

use serde_json::{json, Map, Value};

use crate::goodness::Loop;
use crate::linalg::Witness;
use crate::measures::MarginalVector;
use crate::model::{Coordinate, Decomposition, PinSet, Point, PointSet, Scalar, Space};

pub fn rational(v: &Scalar) -> Value {
    Value::String(v.to_string())
}

pub fn labels(space: &Space, p: &Point) -> Value {
    p.coords()
        .iter()
        .zip(space.axes())
        .map(|(&v, a)| Value::String(a.label(v).to_string()))
        .collect()
}

pub fn points(s: &PointSet) -> Value {
    s.iter().map(|p| labels(s.space(), p)).collect()
}

/// Indices in `s` of the given points (all must be members).
pub fn indices<'a>(s: &PointSet, pts: impl IntoIterator<Item = &'a Point>) -> Value {
    pts.into_iter()
        .map(|p| json!(s.index_of(p).expect("member of the set")))
        .collect()
}

pub fn coordinate(space: &Space, c: Coordinate) -> Value {
    let axis = &space.axes()[c.axis];
    json!({"axis": axis.name(), "value": axis.label(c.value)})
}

/// `{axis name: {value label: rational}}`.
pub fn decomposition(space: &Space, d: &Decomposition) -> Value {
    let mut out = Map::new();
    for (i, axis) in space.axes().iter().enumerate() {
        let values: Map<String, Value> = d
            .axis(i)
            .iter()
            .map(|(&v, x)| (axis.label(v).to_string(), rational(x)))
            .collect();
        out.insert(axis.name().to_string(), Value::Object(values));
    }
    Value::Object(out)
}

pub fn pins(space: &Space, pins: &PinSet) -> Value {
    pins.iter()
        .map(|(c, v)| {
            let mut o = coordinate(space, c);
            o["rational"] = rational(v);
            o
        })
        .collect()
}

pub fn cycle(s: &PointSet, l: &Loop) -> Value {
    json!({
        "points": indices(s, &l.points),
        "coefficients": l.coefficients,
    })
}

pub fn witness(s: &PointSet, w: &Witness) -> Value {
    let rows: Vec<Value> = w
        .rows
        .iter()
        .map(|(p, y)| json!({"point": s.index_of(p), "multiplier": rational(y)}))
        .collect();
    let pinned: Vec<Value> = w
        .pins
        .iter()
        .map(|(c, y)| {
            let mut o = coordinate(s.space(), *c);
            o["multiplier"] = rational(y);
            o
        })
        .collect();
    json!({"rows": rows, "pins": pinned, "residual": rational(&w.residual)})
}

pub fn marginals(space: &Space, m: &MarginalVector) -> Value {
    let mut out = Map::new();
    for (i, axis) in space.axes().iter().enumerate() {
        let values: Map<String, Value> = m.axes[i]
            .iter()
            .map(|(&v, x)| (axis.label(v).to_string(), rational(x)))
            .collect();
        out.insert(axis.name().to_string(), Value::Object(values));
    }
    Value::Object(out)
}

/// Plain `key: value` lines for terminal reading.
pub fn human(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) if !map.is_empty() => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, out);
                }
            }
            other => {
                out.push_str(prefix);
                out.push_str(": ");
                out.push_str(&other.to_string());
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}
