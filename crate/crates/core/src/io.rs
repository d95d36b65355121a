//! JSON documents exchanged with the command line.
//!
//! Scalars are strings (`"3"`, `"-7/4"`, `"-inf"`, `"+inf"`); plain JSON
//! numbers are accepted on input and parsed exactly from their text.
//! Indices are 1-based.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::alcoved::AlcovedPoly;
use crate::error::{Error, Result};
use crate::games::{CellComplex, MeanPayoffGame, PolicyPair};
use crate::homog::{parse_bitstring, HypercubeLattice};
use crate::minmax::ShapleyOp;
use crate::retract::GeneratorSet;
use crate::scalar::{Ext, Rat};
use crate::tropical::{TropMat, TropVec};

/// Every document kind, tagged by `"type"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Document {
    Alcoved(AlcovedDoc),
    Generators(GeneratorSet),
    Game(GameDoc),
    Lattice01(LatticeDoc),
    Operator(ShapleyOp),
    Points(PointsDoc),
    Complex(ComplexDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcovedDoc {
    #[serde(rename = "M")]
    pub m: TropMat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameDoc {
    #[serde(rename = "A")]
    pub a: TropMat,
    #[serde(rename = "B")]
    pub b: TropMat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub n: usize,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsDoc {
    pub points: Vec<TropVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub id: usize,
    pub dimension: usize,
    #[serde(rename = "policies")]
    pub tau: PolicyPair,
    pub star: TropMat,
    /// Ids of the cells contained in this one.
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub n: usize,
    pub lambda: Option<Ext>,
    pub complete: bool,
    pub maximal: Vec<usize>,
    pub cells: Vec<CellDoc>,
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Alcoved(_) => "alcoved",
            Document::Generators(_) => "generators",
            Document::Game(_) => "game",
            Document::Lattice01(_) => "lattice01",
            Document::Operator(_) => "operator",
            Document::Points(_) => "points",
            Document::Complex(_) => "complex",
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses a tagged document. An untagged object with `n_in` and `coords`
/// is read as an operator, a bare matrix as an alcoved document, and a bare
/// array of vectors as a point list.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(parse_err)?;
    document_from_value(value)
}

pub fn document_from_value(value: Value) -> Result<Document> {
    match &value {
        Value::Object(map) if map.contains_key("type") => serde_json::from_value(value).map_err(parse_err),
        Value::Object(map) if map.contains_key("coords") => {
            serde_json::from_value(value).map(Document::Operator).map_err(parse_err)
        }
        Value::Object(map) if map.contains_key("data") => {
            serde_json::from_value(value).map(|m| Document::Alcoved(AlcovedDoc { m })).map_err(parse_err)
        }
        Value::Array(_) => {
            serde_json::from_value(value).map(|points| Document::Points(PointsDoc { points })).map_err(parse_err)
        }
        _ => Err(Error::Parse("unrecognized document".into())),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("documents serialize")
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

/// Finite point from a vector, rejecting infinite entries.
pub fn finite_point(v: &TropVec) -> Result<Vec<Rat>> {
    v.to_point().ok_or_else(|| Error::InvalidEntry("expected a finite vector".into()))
}

pub fn point_vec(x: &[Rat]) -> TropVec {
    TropVec::from_point(x)
}

impl Document {
    pub fn into_alcoved(self) -> Result<AlcovedPoly> {
        match self {
            Document::Alcoved(d) => AlcovedPoly::new(d.m),
            other => Err(wrong_kind("alcoved", &other)),
        }
    }

    pub fn into_generators(self) -> Result<GeneratorSet> {
        match self {
            Document::Generators(g) => Ok(g),
            Document::Points(p) => {
                let pts = p.points.iter().map(finite_point).collect::<Result<Vec<_>>>()?;
                GeneratorSet::from_points(&pts)
            }
            other => Err(wrong_kind("generators", &other)),
        }
    }

    pub fn into_game(self) -> Result<MeanPayoffGame> {
        match self {
            Document::Game(d) => MeanPayoffGame::new(d.a, d.b),
            Document::Operator(op) => MeanPayoffGame::from_operator(&op),
            other => Err(wrong_kind("game", &other)),
        }
    }

    pub fn into_operator(self) -> Result<ShapleyOp> {
        match self {
            Document::Operator(op) => Ok(op),
            Document::Game(d) => Ok(MeanPayoffGame::new(d.a, d.b)?.pair().to_operator()),
            other => Err(wrong_kind("operator", &other)),
        }
    }

    pub fn into_points(self) -> Result<Vec<Vec<Rat>>> {
        match self {
            Document::Points(p) => p.points.iter().map(finite_point).collect(),
            other => Err(wrong_kind("points", &other)),
        }
    }

    /// Element set of a `lattice01` document, not yet verified.
    pub fn into_bitset(self) -> Result<(usize, BTreeSet<u64>)> {
        match self {
            Document::Lattice01(d) => {
                let set = d.elements.iter().map(|s| parse_bitstring(s, d.n)).collect::<Result<_>>()?;
                Ok((d.n, set))
            }
            other => Err(wrong_kind("lattice01", &other)),
        }
    }
}

fn wrong_kind(expected: &str, found: &Document) -> Error {
    Error::Parse(format!("expected a {expected} document, found {}", found.kind()))
}

pub fn lattice_doc(l: &HypercubeLattice) -> Document {
    Document::Lattice01(LatticeDoc { n: l.n(), elements: l.bitstrings() })
}

pub fn complex_doc(cx: &CellComplex) -> ComplexDoc {
    ComplexDoc {
        n: cx.n,
        lambda: cx.lambda.clone().map(Ext::Fin),
        complete: cx.complete,
        maximal: cx.maximal().into_iter().map(|c| c + 1).collect(),
        cells: cx
            .cells
            .iter()
            .enumerate()
            .map(|(k, c)| CellDoc {
                id: k + 1,
                dimension: c.dimension,
                tau: c.tau.clone(),
                star: c.poly.star().clone(),
                faces: cx.faces[k].iter().map(|f| f + 1).collect(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn matrix_document_round_trip() {
        let text = r#"{"type":"alcoved","M":{"rows":2,"cols":2,"data":[["-inf",0],["-inf","-inf"]]}}"#;
        let doc = parse_document(text).unwrap();
        let again = parse_document(&to_json(&doc)).unwrap();
        assert_eq!(doc, again);
        let p = doc.into_alcoved().unwrap();
        assert_eq!(p.dimension(), 2);
    }

    #[test]
    fn bare_documents() {
        assert!(matches!(parse_document("[[1,0,0],[0,1,0]]").unwrap(), Document::Points(_)));
        let m = parse_document(r#"{"rows":1,"cols":1,"data":[["1"]]}"#).unwrap();
        assert!(matches!(m.into_alcoved(), Err(Error::EmptyPolyhedron { .. })));
        let op = to_json(&fixtures::butterfly());
        assert_eq!(parse_document(&op).unwrap().into_operator().unwrap(), fixtures::butterfly());
        assert!(parse_document(r#"{"rows":2,"cols":2,"data":[["0"]]}"#).is_err());
    }

    #[test]
    fn generators_and_games_round_trip() {
        let g = Document::Generators(fixtures::butterfly_generators());
        assert_eq!(parse_document(&to_json(&g)).unwrap(), g);
        let game = fixtures::fathi_game();
        let d = Document::Game(GameDoc { a: game.a().clone(), b: game.b().clone() });
        let back = parse_document(&to_json(&d)).unwrap();
        assert_eq!(back.into_game().unwrap(), game);
    }

    #[test]
    fn decimals_are_exact() {
        let d = parse_document(r#"[[0.1, "1/3", 2]]"#).unwrap();
        let pts = d.into_points().unwrap();
        assert_eq!(pts[0][0], crate::scalar::ratio(1, 10));
    }
}
