//! JSON file formats for functions and polytopes.
//!
//! Functions: `{"kind":"mc","dim":d,"tree":node}`,
//! `{"kind":"dc","dim":d,"h":node,"g":node}` and
//! `{"kind":"maxmin","dim":d,"pieces":[leaf…],"groups":[[…]]}`, where a node
//! is `{"sum":[…]}`, `{"max":[…]}` or `{"leaf":{"x":[…],"a":"p/q"}}`.
//!
//! Polytopes: `{"vertices":[[…]]}`,
//! `{"hrep":{"dim":d,"eq":[{"a":[…],"b":…}],"le":[…]}}` or
//! `{"zonotope":{"center":[…],"generators":[[…]]}}`.
//!
//! Rationals are written as canonical strings and read from strings or
//! JSON numbers.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactsolve::{LinearSystem, Row};
use crate::pafunc::{Affine, DcFunction, MaxMinFunction, McFunction, McNode, PaFunction};
use crate::polytope::{HPolyhedron, Polytope, VPolytope, Zonotope};
use crate::rational::{from_q, to_q, Q};

#[derive(Serialize, Deserialize)]
struct LeafJson {
    x: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<Q>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum NodeJson {
    Sum(Vec<NodeJson>),
    Max(Vec<NodeJson>),
    Leaf(LeafJson),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FunctionJson {
    Mc {
        dim: usize,
        tree: NodeJson,
    },
    Dc {
        dim: usize,
        h: NodeJson,
        g: NodeJson,
    },
    Maxmin {
        dim: usize,
        pieces: Vec<LeafJson>,
        groups: Vec<Vec<usize>>,
    },
}

fn leaf_to_json(l: &Affine) -> LeafJson {
    LeafJson {
        x: to_q(&l.x),
        a: Some(Q(l.a.clone())),
    }
}

fn leaf_from_json(l: LeafJson) -> Affine {
    Affine::new(from_q(l.x), l.a.map_or_else(Zero::zero, |q| q.0))
}

fn node_to_json(n: &McNode) -> NodeJson {
    match n {
        McNode::Sum(c) => NodeJson::Sum(c.iter().map(node_to_json).collect()),
        McNode::Max(c) => NodeJson::Max(c.iter().map(node_to_json).collect()),
        McNode::Leaf(l) => NodeJson::Leaf(leaf_to_json(l)),
    }
}

fn node_from_json(n: NodeJson) -> McNode {
    match n {
        NodeJson::Sum(c) => McNode::Sum(c.into_iter().map(node_from_json).collect()),
        NodeJson::Max(c) => McNode::Max(c.into_iter().map(node_from_json).collect()),
        NodeJson::Leaf(l) => McNode::Leaf(leaf_from_json(l)),
    }
}

/// Validates a tree, padding uneven branches with single-child wrappers when
/// the strict shape check fails.
fn mc_from_json(dim: usize, n: NodeJson) -> Result<McFunction> {
    let root = node_from_json(n);
    McFunction::new(dim, root.clone()).or_else(|_| McFunction::balanced(dim, root))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads a function file.
pub fn function_from_json(text: &str) -> Result<PaFunction> {
    Ok(match parse_json::<FunctionJson>(text)? {
        FunctionJson::Mc { dim, tree } => PaFunction::Mc(mc_from_json(dim, tree)?),
        FunctionJson::Dc { dim, h, g } => PaFunction::Dc(DcFunction::new(mc_from_json(dim, h)?, mc_from_json(dim, g)?)?),
        FunctionJson::Maxmin { dim, pieces, groups } => PaFunction::MaxMin(MaxMinFunction::new(
            dim,
            pieces.into_iter().map(leaf_from_json).collect(),
            groups,
        )?),
    })
}

/// Writes a function file.
pub fn function_to_json(f: &PaFunction) -> String {
    let j = match f {
        PaFunction::Mc(h) => FunctionJson::Mc {
            dim: h.dim(),
            tree: node_to_json(h.root()),
        },
        PaFunction::Dc(d) => FunctionJson::Dc {
            dim: d.dim(),
            h: node_to_json(d.h.root()),
            g: node_to_json(d.g.root()),
        },
        PaFunction::MaxMin(m) => FunctionJson::Maxmin {
            dim: m.dim(),
            pieces: m.pieces().iter().map(leaf_to_json).collect(),
            groups: m.groups().to_vec(),
        },
    };
    serde_json::to_string(&j).expect("function serializes")
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    a: Vec<Q>,
    b: Q,
}

#[derive(Serialize, Deserialize)]
struct HrepJson {
    dim: usize,
    #[serde(default)]
    eq: Vec<RowJson>,
    #[serde(default)]
    le: Vec<RowJson>,
}

#[derive(Serialize, Deserialize)]
struct ZonotopeJson {
    center: Vec<Q>,
    #[serde(default)]
    generators: Vec<Vec<Q>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum PolytopeJson {
    Vertices(Vec<Vec<Q>>),
    Hrep(HrepJson),
    Zonotope(ZonotopeJson),
}

fn rows_from_json(rows: Vec<RowJson>) -> Vec<Row> {
    rows.into_iter()
        .map(|r| Row {
            a: from_q(r.a),
            b: r.b.0,
        })
        .collect()
}

fn rows_to_json(rows: &[Row]) -> Vec<RowJson> {
    rows.iter()
        .map(|r| RowJson {
            a: to_q(&r.a),
            b: Q(r.b.clone()),
        })
        .collect()
}

/// Reads a polytope file.
pub fn polytope_from_json(text: &str) -> Result<Polytope> {
    Ok(match parse_json::<PolytopeJson>(text)? {
        PolytopeJson::Vertices(v) => Polytope::V(VPolytope::new(v.into_iter().map(from_q).collect())?),
        PolytopeJson::Hrep(h) => Polytope::H(HPolyhedron::new(LinearSystem {
            nvars: h.dim,
            eq: rows_from_json(h.eq),
            le: rows_from_json(h.le),
        })?),
        PolytopeJson::Zonotope(z) => Polytope::Zonotope(Zonotope::new(
            from_q(z.center),
            z.generators.into_iter().map(from_q).collect(),
        )?),
    })
}

/// Writes a polytope file.
pub fn polytope_to_json(p: &Polytope) -> String {
    let j = match p {
        Polytope::V(v) => PolytopeJson::Vertices(v.vertices().iter().map(|x| to_q(x)).collect()),
        Polytope::H(h) => PolytopeJson::Hrep(HrepJson {
            dim: h.sys.nvars,
            eq: rows_to_json(&h.sys.eq),
            le: rows_to_json(&h.sys.le),
        }),
        Polytope::Zonotope(z) => PolytopeJson::Zonotope(ZonotopeJson {
            center: to_q(&z.center),
            generators: z.generators.iter().map(|g| to_q(g)).collect(),
        }),
    };
    serde_json::to_string(&j).expect("polytope serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ivec};

    #[test]
    fn function_round_trip() {
        let text = r#"{"kind":"dc","dim":1,"h":{"max":[{"leaf":{"x":[1]}},{"leaf":{"x":[-1],"a":"1/2"}}]},"g":{"sum":[]}}"#;
        let f = function_from_json(text).unwrap();
        assert_eq!(f.eval(&[int(0)]).unwrap(), frac(1, 2));
        assert_eq!(function_from_json(&function_to_json(&f)).unwrap(), f);
        let m = r#"{"kind":"maxmin","dim":1,"pieces":[{"x":[1]},{"x":[0]}],"groups":[[0,1]]}"#;
        let f = function_from_json(m).unwrap();
        assert_eq!(f.eval(&[int(-2)]).unwrap(), int(-2));
        assert_eq!(function_from_json(&function_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn uneven_tree_is_padded() {
        let text = r#"{"kind":"mc","dim":1,"tree":{"sum":[{"max":[{"leaf":{"x":[1]}}]},{"max":[{"sum":[{"max":[{"leaf":{"x":[2]}}]}]}]}]}}"#;
        assert_eq!(function_from_json(text).unwrap().eval(&[int(1)]).unwrap(), int(3));
    }

    #[test]
    fn polytope_round_trip() {
        for text in [
            r#"{"vertices":[[0,0],[1,"1/2"]]}"#,
            r#"{"zonotope":{"center":[0],"generators":[[1],[2]]}}"#,
            r#"{"hrep":{"dim":1,"le":[{"a":[1],"b":1},{"a":[-1],"b":0}]}}"#,
        ] {
            let p = polytope_from_json(text).unwrap();
            assert_eq!(polytope_from_json(&polytope_to_json(&p)).unwrap(), p);
        }
        assert!(polytope_from_json(r#"{"vertices":[[0],[1,2]]}"#).is_err());
        assert!(function_from_json(r#"{"kind":"nope"}"#).is_err());
        assert_eq!(
            polytope_from_json(r#"{"vertices":[[2],[0]]}"#).unwrap().to_vpolytope(&Default::default()).unwrap().vertices(),
            &[ivec(&[0]), ivec(&[2])]
        );
    }
}
