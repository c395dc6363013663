//! Text and JSON renderings of polynomials and maps.

use polyinv::{Polynomial, PolynomialMap, Rational};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialJson {
    pub variables: Vec<String>,
    pub text: String,
    pub terms: Vec<TermJson>,
}

pub fn rational_string(r: &Rational) -> String {
    if *r.denom() == 1.into() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn polynomial_text(p: &Polynomial, names: &[String]) -> String {
    p.display_with(names).to_string()
}

pub fn polynomial_json(p: &Polynomial, names: &[String]) -> PolynomialJson {
    PolynomialJson {
        variables: names.to_vec(),
        text: polynomial_text(p, names),
        terms: p
            .terms()
            .map(|(m, c)| TermJson {
                exponents: m.exponents().to_vec(),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })
            .collect(),
    }
}

pub fn map_json(f: &PolynomialMap, names: &[String]) -> Vec<PolynomialJson> {
    f.components().iter().map(|p| polynomial_json(p, names)).collect()
}

/// A map file for `f` that `parse_map` reads back to the same map.
pub fn map_text(f: &PolynomialMap, names: &[String]) -> String {
    let mut out = format!("vars {}\n", names.join(" "));
    for (k, p) in f.components().iter().enumerate() {
        out.push_str(&format!("F{} = {}\n", k + 1, polynomial_text(p, names)));
    }
    out
}

/// Names for the target variables of an inverse: `Xk` becomes `Yk` when
/// that stays collision free, otherwise the input names are kept.
pub fn inverse_names(names: &[String]) -> Vec<String> {
    let renamed: Vec<String> = names
        .iter()
        .map(|n| match n.strip_prefix('X') {
            Some(rest) => format!("Y{rest}"),
            None => n.clone(),
        })
        .collect();
    let distinct = renamed.iter().enumerate().all(|(i, a)| !renamed[..i].contains(a));
    let all_renamed = names.iter().all(|n| n.starts_with('X'));
    if distinct && all_renamed {
        renamed
    } else {
        names.to_vec()
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}
