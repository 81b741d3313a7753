//! JSON, DOT and CSV serialization.

use serde::{Deserialize, Serialize};

use crate::dyck::MDyckPath;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::strip::ConjectureReport;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Poset> for PosetJson {
    fn from(p: &Poset) -> Self {
        PosetJson {
            n: p.len(),
            covers: p.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: p.labels().map(<[String]>::to_vec),
        }
    }
}

impl TryFrom<PosetJson> for Poset {
    type Error = Error;

    fn try_from(j: PosetJson) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = j.covers.iter().map(|c| (c[0], c[1])).collect();
        let p = Poset::from_cover_relations(j.n, &pairs)?;
        match j.labels {
            Some(l) => p.with_labels(l),
            None => Ok(p),
        }
    }
}

pub fn poset_from_json(s: &str) -> Result<Poset> {
    let j: PosetJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.try_into()
}

pub fn poset_to_json(p: &Poset) -> String {
    serde_json::to_string_pretty(&PosetJson::from(p)).expect("serializable")
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PathJson {
    pub m: usize,
    pub n: usize,
    pub u: Vec<usize>,
}

impl From<&MDyckPath> for PathJson {
    fn from(p: &MDyckPath) -> Self {
        PathJson { m: p.m(), n: p.n(), u: p.steps().to_vec() }
    }
}

pub fn path_from_json(s: &str) -> Result<MDyckPath> {
    let j: PathJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if j.u.len() != j.n {
        return Err(Error::Parse(format!("expected {} steps, got {}", j.n, j.u.len())));
    }
    MDyckPath::new(j.m, j.u)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram; edges point from lower to upper element. Node identifiers
/// are the element labels when those are distinct, else `n<index>`.
pub fn to_dot(p: &Poset) -> String {
    let labels: Vec<String> = (0..p.len()).map(|x| p.label(x)).collect();
    let distinct = labels.iter().collect::<std::collections::BTreeSet<_>>().len() == labels.len();
    let id = |x: usize| {
        if distinct {
            format!("\"{}\"", dot_escape(&labels[x]))
        } else {
            format!("n{x}")
        }
    };
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for (x, label) in labels.iter().enumerate() {
        out.push_str(&format!("  {} [label=\"{}\"];\n", id(x), dot_escape(label)));
    }
    for (a, b) in p.covers() {
        out.push_str(&format!("  {} -> {};\n", id(a), id(b)));
    }
    out.push_str("}\n");
    out
}

/// Harness rows with columns `n,m,path_count,injective,order_iso,elapsed_ms`.
pub fn conjecture_csv(rows: &[ConjectureReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "m", "path_count", "injective", "order_iso", "elapsed_ms"]).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.m.to_string(),
            r.path_count.to_string(),
            r.injective.to_string(),
            r.order_iso.to_string(),
            r.elapsed_ms.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain;

    #[test]
    fn json_round_trip() {
        let p = chain(3).with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let s = poset_to_json(&p);
        let q = poset_from_json(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.label(2), "c");
        let j: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(j["covers"], serde_json::json!([[0, 1], [1, 2]]));
    }

    #[test]
    fn json_errors() {
        assert!(matches!(poset_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(poset_from_json(r#"{"n":2,"covers":[[0,1],[1,0]]}"#), Err(Error::Cyclic(_))));
        assert!(matches!(poset_from_json(r#"{"n":2,"covers":[],"labels":["x"]}"#), Err(Error::Precondition(_))));
        assert!(matches!(path_from_json(r#"{"m":2,"n":3,"u":[0,1]}"#), Err(Error::Parse(_))));
        assert_eq!(path_from_json(r#"{"m":2,"n":3,"u":[0,1,4]}"#).unwrap().steps(), &[0, 1, 4]);
    }

    #[test]
    fn dot_output() {
        let d = to_dot(&chain(2));
        assert!(d.contains("\"0\" -> \"1\";"));
        let dup = chain(2).with_labels(vec!["x".into(), "x".into()]).unwrap();
        assert!(to_dot(&dup).contains("n0 -> n1;"));
        assert!(d.starts_with("digraph poset {"));
        assert_eq!(d, to_dot(&chain(2)));
    }
}
