//! The explicit Cayley graph construction over `PGL₂(F_{q^{2m}})`: norm
//! solutions, generator matrices, squared generators and the instance pair (X, Y).

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement, TowerMap};
use crate::ffpoly::{classify_graph_type, inert_test, search_parameters, GraphType, Polynomial};
use crate::graph::{cayley_build, inverse_pairing, CayleyGraph};
use crate::projgroup::{generate_closure, GroupClosure, ProjectiveMatrix};

/// Validated construction parameters with the derived big field.
#[derive(Clone, Debug)]
pub struct InstanceParams {
    q: u64,
    m: usize,
    base: Field,
    htilde: Polynomial,
    epsilon: FieldElement,
    h: Polynomial,
    big: Field,
    embedding: TowerMap,
    tau: FieldElement,
    i: FieldElement,
    graph_type: GraphType,
}

impl InstanceParams {
    /// `epsilon` defaults to the least non-square of `F_q`.
    pub fn new(htilde: Polynomial, epsilon: Option<FieldElement>) -> Result<InstanceParams> {
        let base = htilde.field().clone();
        let q = base.order();
        if q % 2 == 0 {
            return Err(Error::EvenCharacteristic(q));
        }
        let m = htilde
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidParameter("h̃ must have degree at least 1".into()))?;
        if !htilde.is_monic() {
            return Err(Error::NotMonic);
        }
        if !htilde.is_irreducible()? {
            return Err(Error::Reducible(htilde.display_with("s")));
        }
        if !inert_test(&htilde)? {
            return Err(Error::InvalidParameter(format!("h̃ = {} is not inert", htilde.display_with("s"))));
        }
        let graph_type = classify_graph_type(&htilde)?;
        let epsilon = match epsilon {
            Some(e) if e.field() != &base => return Err(Error::FieldMismatch),
            Some(e) if e.is_zero() || e.is_square() => {
                return Err(Error::InvalidParameter(format!("ε = {e} is not a non-square")))
            }
            Some(e) => e,
            None => base.least_non_square().expect("odd characteristic"),
        };
        let h = htilde.inflate(2);
        let p = base.characteristic() as u64;
        let (big, embedding, tau) = if base.degree() == 1 {
            let coeffs: Vec<u32> = h.coeffs().iter().map(|c| c.coeffs()[0]).collect();
            let big = Field::new(p, 2 * m, Some(&coeffs))?;
            let embedding = TowerMap::new(&base, &big)?;
            let tau = big.generator().expect("extension field");
            (big, embedding, tau)
        } else {
            let big = Field::new(p, base.degree() * 2 * m, None)?;
            let embedding = TowerMap::new(&base, &big)?;
            let mapped = h.map_coeffs(&big, |c| embedding.apply(c))?;
            let tau = big
                .elements()
                .find(|x| mapped.eval(x).map(|v| v.is_zero()).unwrap_or(false))
                .ok_or_else(|| Error::IncompatibleTower("h has no root in the big field".into()))?;
            (big, embedding, tau)
        };
        let i = embedding.apply(&epsilon)?.sqrt()?;
        Ok(InstanceParams { q, m, base, htilde, epsilon, h, big, embedding, tau, i, graph_type })
    }

    /// First PGL-type parameter found by lexicographic search.
    pub fn auto(q: u64, m: usize) -> Result<InstanceParams> {
        let found = search_parameters(q, m, GraphType::PglBipartite)?;
        let htilde = found.into_iter().next().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no inert h̃ of degree {m} over F_{q} gives a bipartite PGL graph; supply htilde_coeffs"
            ))
        })?;
        InstanceParams::new(htilde, None)
    }

    /// Same parameters with `𝒊` replaced by `-𝒊`.
    pub fn with_negated_i(mut self) -> InstanceParams {
        self.i = -&self.i;
        self
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn big_field(&self) -> &Field {
        &self.big
    }

    pub fn htilde(&self) -> &Polynomial {
        &self.htilde
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn epsilon(&self) -> &FieldElement {
        &self.epsilon
    }

    /// Residue class of `t` in the big field.
    pub fn tau(&self) -> &FieldElement {
        &self.tau
    }

    /// The chosen square root of `ε` in the big field.
    pub fn i(&self) -> &FieldElement {
        &self.i
    }

    pub fn embedding(&self) -> &TowerMap {
        &self.embedding
    }

    pub fn graph_type(&self) -> GraphType {
        self.graph_type
    }

    /// `Q(Q²−1)` for PGL type, half that for PSL type, with `Q = q^{2m}`.
    pub fn expected_x_order(&self) -> u64 {
        let big_q = self.big.order();
        let full = big_q * (big_q * big_q - 1);
        match self.graph_type {
            GraphType::PglBipartite => full,
            GraphType::PslNonbipartite => full / 2,
        }
    }

    /// `|PGL₂(F_{q^m})|`.
    pub fn expected_y_order(&self) -> u64 {
        let small_q = self.q.pow(self.m as u32);
        small_q * (small_q * small_q - 1)
    }

    /// Fully resolved descriptor.
    pub fn descriptor(&self) -> InstanceDescriptor {
        InstanceDescriptor {
            q: self.q,
            m: self.m,
            htilde_coeffs: Some(self.htilde.coeffs().iter().map(element_to_json).collect()),
            epsilon: Some(element_to_json(&self.epsilon)),
        }
    }
}

/// Integer for prime-field elements, residue list otherwise.
pub fn element_to_json(e: &FieldElement) -> Value {
    if e.field().degree() == 1 {
        Value::from(e.coeffs()[0])
    } else {
        Value::from(e.coeffs().to_vec())
    }
}

/// On-disk instance description; omitted `htilde_coeffs` triggers the parameter search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDescriptor {
    pub q: u64,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub htilde_coeffs: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Value>,
}

impl InstanceDescriptor {
    pub fn from_json_str(s: &str) -> Result<InstanceDescriptor> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_toml_str(s: &str) -> Result<InstanceDescriptor> {
        let v: toml::Value = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let json = serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        serde_json::from_value(json).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reads a `.toml` or `.json` file (chosen by extension, JSON otherwise).
    pub fn load(path: &Path) -> Result<InstanceDescriptor> {
        let text = std::fs::read_to_string(path)?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => InstanceDescriptor::from_toml_str(&text),
            _ => InstanceDescriptor::from_json_str(&text),
        }
    }

    pub fn resolve(&self) -> Result<InstanceParams> {
        if self.q % 2 == 0 {
            return Err(Error::EvenCharacteristic(self.q));
        }
        let base = Field::with_order(self.q)?;
        let epsilon = self.epsilon.as_ref().map(|v| base.element_from_json(v)).transpose()?;
        match &self.htilde_coeffs {
            None => {
                let params = InstanceParams::auto(self.q, self.m)?;
                match epsilon {
                    Some(e) => InstanceParams::new(params.htilde, Some(e)),
                    None => Ok(params),
                }
            }
            Some(coeffs) => {
                let htilde = Polynomial::from_json(&base, &Value::from(coeffs.clone()))?;
                if htilde.degree() != Some(self.m) {
                    return Err(Error::InvalidParameter(format!(
                        "h̃ has degree {:?} but m = {}",
                        htilde.degree(),
                        self.m
                    )));
                }
                InstanceParams::new(htilde, epsilon)
            }
        }
    }
}

/// All `(c, d) ∈ F_q²` with `εd² − c² = 1`, ordered by `d` then `c` in residue order.
pub fn norm_solutions(epsilon: &FieldElement) -> Result<Vec<(FieldElement, FieldElement)>> {
    let field = epsilon.field();
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic(field.order()));
    }
    if epsilon.is_zero() || epsilon.is_square() {
        return Err(Error::InvalidParameter(format!("ε = {epsilon} is not a non-square")));
    }
    let mut out = Vec::new();
    for d in field.elements() {
        let ed2 = epsilon * &d.square();
        for c in field.elements() {
            if (&ed2 - &c.square()).is_one() {
                out.push((c.clone(), d.clone()));
            }
        }
    }
    Ok(out)
}

/// Generators `γ_k`, their squares `δ_k`, and the inverse pairing.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub solutions: Vec<(FieldElement, FieldElement)>,
    pub gammas: Vec<ProjectiveMatrix>,
    pub deltas: Vec<ProjectiveMatrix>,
    /// `gammas[pairing[k]] = gammas[k]⁻¹`, and likewise for `deltas`.
    pub pairing: Vec<usize>,
}

/// `[[τ+1, c−d𝒊], [(c+d𝒊)(τ²−1), τ+1]]` over the big field.
pub fn gamma(params: &InstanceParams, c: &FieldElement, d: &FieldElement) -> Result<ProjectiveMatrix> {
    let emb = params.embedding();
    let (c, d) = (emb.apply(c)?, emb.apply(d)?);
    let big = params.big_field();
    let tau = params.tau();
    let di = &d * params.i();
    let diag = tau + &big.one();
    let t2m1 = &tau.square() - &big.one();
    ProjectiveMatrix::new(vec![vec![diag.clone(), &c - &di], vec![&(&c + &di) * &t2m1, diag]])
}

/// `[[1, c−d𝒊], [(c+d𝒊)(τ²−1), 1]]`, the closed form of `γ²`.
pub fn delta_closed_form(params: &InstanceParams, c: &FieldElement, d: &FieldElement) -> Result<ProjectiveMatrix> {
    let emb = params.embedding();
    let (c, d) = (emb.apply(c)?, emb.apply(d)?);
    let big = params.big_field();
    let di = &d * params.i();
    let t2m1 = &params.tau().square() - &big.one();
    ProjectiveMatrix::new(vec![vec![big.one(), &c - &di], vec![&(&c + &di) * &t2m1, big.one()]])
}

pub fn build_generators(params: &InstanceParams) -> Result<GeneratorSet> {
    let solutions = norm_solutions(params.epsilon())?;
    let gammas = solutions.iter().map(|(c, d)| gamma(params, c, d)).collect::<Result<Vec<_>>>()?;
    let deltas: Vec<ProjectiveMatrix> = gammas.iter().map(|g| g * g).collect();
    let pairing = inverse_pairing(&gammas)?;
    Ok(GeneratorSet { solutions, gammas, deltas, pairing })
}

/// The constructed pair: `X` on `⟨γ⟩` and `Y` on `⟨δ⟩`, with `Y` located inside `X`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub params: InstanceParams,
    pub generators: GeneratorSet,
    pub x_group: GroupClosure,
    pub y_group: GroupClosure,
    pub x: CayleyGraph,
    pub y: CayleyGraph,
    /// `y_in_x[j]` is the `X` vertex of `Y` element `j`.
    pub y_in_x: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceSummary {
    pub descriptor: InstanceDescriptor,
    pub big_field_modulus: Vec<u32>,
    pub tau: Vec<u32>,
    pub i: Vec<u32>,
    pub graph_type: GraphType,
    pub x_order: u64,
    pub expected_x_order: u64,
    pub y_order: u64,
    pub expected_y_order: u64,
    pub y_order_matches: bool,
    pub degree: usize,
}

/// Builds with closure caps of twice the predicted orders.
pub fn build_instance(params: &InstanceParams) -> Result<Instance> {
    let x_cap = 2 * params.expected_x_order() as usize;
    let y_cap = 2 * params.expected_y_order() as usize;
    build_instance_with_caps(params, x_cap, y_cap)
}

pub fn build_instance_with_caps(params: &InstanceParams, x_cap: usize, y_cap: usize) -> Result<Instance> {
    let generators = build_generators(params)?;
    let x_group = generate_closure(&generators.gammas, x_cap)?;
    let expected = params.expected_x_order();
    if x_group.len() as u64 != expected {
        return Err(Error::OrderMismatch { expected, found: x_group.len() as u64 });
    }
    let y_group = generate_closure(&generators.deltas, y_cap)?;
    let x = cayley_build(&x_group, &generators.gammas)?;
    let y = cayley_build(&y_group, &generators.deltas)?;
    let y_in_x = y_group
        .elements()
        .iter()
        .map(|e| x_group.id_of(e).ok_or(Error::GeneratorNotInClosure))
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance { params: params.clone(), generators, x_group, y_group, x, y, y_in_x })
}

impl Instance {
    pub fn degree(&self) -> usize {
        self.generators.gammas.len()
    }

    pub fn summary(&self) -> InstanceSummary {
        let p = &self.params;
        InstanceSummary {
            descriptor: p.descriptor(),
            big_field_modulus: p.big_field().modulus().map(|m| m.to_vec()).unwrap_or_default(),
            tau: p.tau().coeffs().to_vec(),
            i: p.i().coeffs().to_vec(),
            graph_type: p.graph_type(),
            x_order: self.x_group.len() as u64,
            expected_x_order: p.expected_x_order(),
            y_order: self.y_group.len() as u64,
            expected_y_order: p.expected_y_order(),
            y_order_matches: self.y_group.len() as u64 == p.expected_y_order(),
            degree: self.degree(),
        }
    }
}
