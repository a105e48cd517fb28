//! JSON forms of quivers, elements, potentials, endomorphisms and QPs.
//! Coefficients are rational strings such as `"-3/2"`; paths are lists of
//! arrow names in written order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::endo::REndomorphism;
use crate::error::{Error, Result};
use crate::mutation::Qp;
use crate::path_algebra::{Element, Path, Potential, Quiver};
use crate::scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Number(u64),
    Text(String),
}

impl Label {
    fn new(s: &str) -> Label {
        match s.parse::<u64>() {
            Ok(n) if n.to_string() == s => Label::Number(n),
            _ => Label::Text(s.to_string()),
        }
    }

    fn text(&self) -> String {
        match self {
            Label::Number(n) => n.to_string(),
            Label::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<Label>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub from: Label,
    pub to: Label,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub path: Vec<String>,
    /// Vertex of a trivial path; omitted otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Label>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(rename = "D")]
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleJson {
    pub arrow: String,
    pub image: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndoJson {
    #[serde(rename = "D")]
    pub degree: usize,
    pub rules: Vec<RuleJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QpJson {
    pub quiver: QuiverJson,
    pub potential: ElementJson,
}

pub fn quiver_to_json(q: &Quiver) -> QuiverJson {
    QuiverJson {
        vertices: q.vertex_labels().iter().map(|l| Label::new(l)).collect(),
        arrows: q
            .arrow_ids()
            .map(|a| ArrowJson {
                id: q.name(a).to_string(),
                from: Label::new(q.vertex_label(q.tail(a))),
                to: Label::new(q.vertex_label(q.head(a))),
            })
            .collect(),
    }
}

pub fn quiver_from_json(j: &QuiverJson) -> Result<Arc<Quiver>> {
    let vertices: Vec<String> = j.vertices.iter().map(Label::text).collect();
    let arrows: Vec<(String, String, String)> = j.arrows.iter().map(|a| (a.id.clone(), a.from.text(), a.to.text())).collect();
    Ok(Arc::new(Quiver::new(vertices, arrows)?))
}

pub fn element_to_json(e: &Element) -> ElementJson {
    let q = e.quiver();
    ElementJson {
        degree: e.degree(),
        terms: e
            .terms()
            .map(|(p, c)| TermJson {
                coeff: scalar::format(c),
                path: p.names(q),
                vertex: p.is_lazy().then(|| Label::new(q.vertex_label(p.tail()))),
            })
            .collect(),
    }
}

pub fn element_from_json(q: &Arc<Quiver>, j: &ElementJson) -> Result<Element> {
    let mut e = Element::zero(q, j.degree);
    for t in &j.terms {
        let path = if t.path.is_empty() {
            let v = t.vertex.as_ref().ok_or_else(|| Error::Parse("a trivial path needs a \"vertex\"".into()))?;
            Path::lazy(q.vertex(&v.text())?)
        } else {
            let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
            Path::from_names(q, &names)?
        };
        let c = scalar::parse(&t.coeff)?;
        let mut single = Element::zero(q, j.degree);
        single.add_term(path, c);
        e = e.add(&single)?;
    }
    Ok(e)
}

pub fn potential_to_json(p: &Potential) -> ElementJson {
    element_to_json(p.element())
}

pub fn potential_from_json(q: &Arc<Quiver>, j: &ElementJson) -> Result<Potential> {
    Potential::from_element(&element_from_json(q, j)?)
}

pub fn endo_to_json(phi: &REndomorphism) -> EndoJson {
    let q = phi.quiver();
    EndoJson {
        degree: phi.degree(),
        rules: phi.rules().map(|(a, img)| RuleJson { arrow: q.name(a).to_string(), image: element_to_json(img) }).collect(),
    }
}

pub fn endo_from_json(q: &Arc<Quiver>, j: &EndoJson) -> Result<REndomorphism> {
    let rules = j
        .rules
        .iter()
        .map(|r| Ok((q.arrow_by_name(&r.arrow)?, element_from_json(q, &r.image)?.with_degree(j.degree))))
        .collect::<Result<Vec<_>>>()?;
    REndomorphism::new(q, j.degree, rules)
}

pub fn qp_to_json(qp: &Qp) -> QpJson {
    QpJson { quiver: quiver_to_json(qp.quiver()), potential: potential_to_json(&qp.potential) }
}

pub fn qp_from_json(j: &QpJson) -> Result<Qp> {
    let q = quiver_from_json(&j.quiver)?;
    Ok(Qp::new(potential_from_json(&q, &j.potential)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use crate::surface::{Triangulation, TriangulationQuiver};

    #[test]
    fn qp_round_trips_through_json_text() {
        let tq = TriangulationQuiver::new(&Triangulation::twice_punctured_genus(1).unwrap()).unwrap();
        let qp = Qp::new(tq.potential_s(&[ratio(-3, 2), int(5)], 12).unwrap());
        let text = serde_json::to_string(&qp_to_json(&qp)).unwrap();
        assert!(text.contains("\"-3/2\""));
        let back = qp_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.potential.element().terms().count(), qp.potential.len());
        assert!(back.potential.is_cyclically_equivalent(&Potential::from_element(&element_from_json(back.quiver(), &potential_to_json(&qp.potential)).unwrap()).unwrap()).unwrap());
        assert_eq!(serde_json::to_string(&qp_to_json(&back)).unwrap(), text);
    }

    #[test]
    fn quiver_labels_keep_numbers_numeric() {
        let q = Quiver::new(["1", "x"], [("a", "1", "x")]).unwrap();
        let j = serde_json::to_value(quiver_to_json(&q)).unwrap();
        assert_eq!(j["vertices"][0], 1);
        assert_eq!(j["arrows"][0]["to"], "x");
    }

    #[test]
    fn endomorphism_and_trivial_paths_round_trip() {
        let q = Arc::new(Quiver::new(["1", "2"], [("a", "1", "2"), ("b", "2", "1"), ("c", "1", "2")]).unwrap());
        let img = Element::from_arrow(&q, 6, q.arrow_by_name("a").unwrap())
            .add(&Element::from_path(&q, 6, Path::from_names(&q, &["c", "b", "a"]).unwrap()).scale(&ratio(1, 3)))
            .unwrap();
        let phi = REndomorphism::new(&q, 6, [(q.arrow_by_name("a").unwrap(), img)]).unwrap();
        let j = serde_json::to_string(&endo_to_json(&phi)).unwrap();
        assert_eq!(endo_from_json(&q, &serde_json::from_str(&j).unwrap()).unwrap(), phi);

        let e = Element::lazy(&q, 3, q.vertex("2").unwrap());
        assert_eq!(element_from_json(&q, &element_to_json(&e)).unwrap(), e);
        let bad = ElementJson { degree: 3, terms: vec![TermJson { coeff: "1".into(), path: vec![], vertex: None }] };
        assert!(element_from_json(&q, &bad).is_err());
    }
}
