//! Parsed map files before parameters are bound.

use std::collections::BTreeMap;

use polyinv::Rational;

/// Expression tree of one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(usize),
    Param(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Var(_) => true,
            Expr::Num(_) | Expr::Param(_) => false,
            Expr::Neg(e) | Expr::Pow(e, _) => e.contains_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_var() || b.contains_var()
            }
        }
    }

    /// Parameter indices in order of first occurrence.
    pub fn params(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Param(i) => {
                if !out.contains(i) {
                    out.push(*i);
                }
            }
            Expr::Num(_) | Expr::Var(_) => {}
            Expr::Neg(e) | Expr::Pow(e, _) => e.params(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.params(out);
                b.params(out);
            }
        }
    }

    /// Parameters occurring anywhere inside a denominator.
    pub fn denominator_params(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Num(_) | Expr::Var(_) | Expr::Param(_) => {}
            Expr::Neg(e) | Expr::Pow(e, _) => e.denominator_params(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.denominator_params(out);
                b.denominator_params(out);
            }
            Expr::Div(a, b) => {
                a.denominator_params(out);
                b.params(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDocument {
    pub variables: Vec<String>,
    pub parameters: Vec<String>,
    /// Values from `bind` lines in the file.
    pub bindings: BTreeMap<String, Rational>,
    pub components: Vec<Expr>,
}

impl MapDocument {
    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    /// Parameters that appear in some denominator, in declaration order.
    pub fn denominator_parameters(&self) -> Vec<usize> {
        let mut found = Vec::new();
        for c in &self.components {
            c.denominator_params(&mut found);
        }
        found.sort_unstable();
        found
    }
}
