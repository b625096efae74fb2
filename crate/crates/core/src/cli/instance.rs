//! The JSON instance file.
//!
//! ```json
//! {
//!   "axes": [{"name": "x", "values": ["0", "1"]}, {"name": "y", "values": [0, 1]}],
//!   "points": [["0", "0"], ["1", 0]],
//!   "f": {"0": "1/2", "1": 3},
//!   "pins": [{"axis": "x", "value": "0", "rational": "0"}],
//!   "measure": {"0": "1/2", "1": "1/2"}
//! }
//! ```
//!
//! Labels may be strings or integers; rationals are integers or `"p/q"`
//! strings, never floats. Point indices are 0-based in file order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::Instance;
use crate::error::{Error, Result};
use crate::measures::FiniteMeasure;
use crate::model::{parse_scalar, Axis, Coordinate, FunctionTable, PinSet, PointSet, Scalar, Space};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Int(i64),
    Text(String),
}

impl Rational {
    pub fn value(&self) -> Result<Scalar> {
        match self {
            Rational::Int(v) => Ok(Scalar::from_integer((*v).into())),
            Rational::Text(s) => parse_scalar(s),
        }
    }

    pub fn from_scalar(v: &Scalar) -> Self {
        Rational::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub name: String,
    pub values: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinSpec {
    pub axis: AxisRef,
    pub value: Label,
    pub rational: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub axes: Vec<AxisSpec>,
    pub points: Vec<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<BTreeMap<String, Rational>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pins: Vec<PinSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<BTreeMap<String, Rational>>,
}

fn malformed(e: Error) -> Error {
    match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    }
}

fn point_index(key: &str, len: usize) -> Result<usize> {
    key.parse::<usize>()
        .ok()
        .filter(|&i| i < len)
        .ok_or_else(|| Error::Parse(format!("{key:?} is not a point index below {len}")))
}

/// Resolves an axis given by name or 0-based index.
pub fn resolve_axis(space: &Space, axis: &AxisRef) -> Result<usize> {
    match axis {
        AxisRef::Index(i) if *i < space.n() => Ok(*i),
        AxisRef::Index(i) => Err(Error::AxisOutOfRange {
            axis: *i,
            n: space.n(),
        }),
        AxisRef::Name(name) => space
            .axis_index(name)
            .ok_or_else(|| Error::Parse(format!("no axis named {name:?}"))),
    }
}

/// Parses `axis:value=rational` items separated by commas; the axis is a
/// name or an index.
pub fn parse_pins(space: &Space, text: &str) -> Result<PinSet> {
    let mut pins = PinSet::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (coord, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("pin {item:?} lacks '='")))?;
        let (axis, label) = coord
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("pin {item:?} lacks ':'")))?;
        let axis_ref = match axis.trim().parse::<usize>() {
            Ok(i) if space.axis_index(axis.trim()).is_none() => AxisRef::Index(i),
            _ => AxisRef::Name(axis.trim().to_string()),
        };
        let axis = resolve_axis(space, &axis_ref)?;
        let c = space.coordinate(axis, label.trim()).map_err(malformed)?;
        if pins.insert(c, parse_scalar(value)?).is_some() {
            return Err(Error::Parse(format!("coordinate pinned twice in {item:?}")));
        }
    }
    Ok(pins)
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    /// Builds the library objects; every inconsistency is a parse error.
    pub fn to_instance(&self) -> Result<Instance> {
        let axes = self
            .axes
            .iter()
            .map(|a| Axis::new(a.name.clone(), a.values.iter().map(|v| v.to_string())))
            .collect::<Result<Vec<_>>>()
            .map_err(malformed)?;
        let space = Arc::new(Space::new(axes).map_err(malformed)?);
        let points = self
            .points
            .iter()
            .map(|row| {
                let labels: Vec<String> = row.iter().map(|l| l.to_string()).collect();
                space.point(&labels)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(malformed)?;
        let set = PointSet::new(space.clone(), points).map_err(malformed)?;

        let f = match &self.f {
            None => None,
            Some(map) => {
                let mut values = vec![Scalar::zero(); set.len()];
                for (k, v) in map {
                    values[point_index(k, set.len())?] = v.value()?;
                }
                Some(FunctionTable::new(&set, values)?)
            }
        };

        let mut pins = PinSet::new();
        for pin in &self.pins {
            let axis = resolve_axis(&space, &pin.axis).map_err(malformed)?;
            let c = space
                .coordinate(axis, &pin.value.to_string())
                .map_err(malformed)?;
            if pins.insert(c, pin.rational.value()?).is_some() {
                return Err(Error::Parse(format!(
                    "coordinate {} pinned twice",
                    space.format_coordinate(&c)
                )));
            }
        }

        let measure = match &self.measure {
            None => None,
            Some(map) => {
                let mut support = Vec::new();
                let mut weights = Vec::new();
                let mut entries: Vec<(usize, Scalar)> = map
                    .iter()
                    .map(|(k, v)| Ok((point_index(k, set.len())?, v.value()?)))
                    .collect::<Result<_>>()?;
                entries.sort_by_key(|(i, _)| *i);
                for (i, w) in entries {
                    if w.is_negative() {
                        return Err(Error::Parse(format!("negative weight at point {i}")));
                    }
                    if !w.is_zero() {
                        support.push(set.points()[i].clone());
                        weights.push(w);
                    }
                }
                let support = set.with_points(support)?;
                Some(FiniteMeasure::new(support, weights).map_err(malformed)?)
            }
        };

        Ok(Instance {
            name: self.name.clone().unwrap_or_default(),
            set,
            f,
            pins,
            measure,
        })
    }

    /// The canonical file for an instance: labels as strings, rationals in
    /// lowest terms, zero values of `f` omitted.
    pub fn from_instance(inst: &Instance) -> Self {
        let space = inst.set.space();
        let label = |c: Coordinate| Label::Text(space.axes()[c.axis].label(c.value).to_string());
        let axes = space
            .axes()
            .iter()
            .map(|a| AxisSpec {
                name: a.name().to_string(),
                values: a.values().iter().cloned().map(Label::Text).collect(),
            })
            .collect();
        let points = inst
            .set
            .iter()
            .map(|p| p.incidence().into_iter().map(label).collect())
            .collect();
        let f = inst.f.as_ref().map(|f| {
            inst.set
                .iter()
                .enumerate()
                .filter_map(|(i, p)| {
                    let v = f.get(p)?;
                    (!v.is_zero()).then(|| (i.to_string(), Rational::from_scalar(v)))
                })
                .collect()
        });
        let pins = inst
            .pins
            .iter()
            .map(|(c, v)| PinSpec {
                axis: AxisRef::Name(space.axes()[c.axis].name().to_string()),
                value: label(c),
                rational: Rational::from_scalar(v),
            })
            .collect();
        let measure = inst.measure.as_ref().map(|m| {
            m.iter()
                .map(|(p, w)| {
                    let i = inst.set.index_of(p).expect("support inside the set");
                    (i.to_string(), Rational::from_scalar(w))
                })
                .collect()
        });
        Self {
            name: (!inst.name.is_empty()).then(|| inst.name.clone()),
            axes,
            points,
            f,
            pins,
            measure,
        }
    }
}
