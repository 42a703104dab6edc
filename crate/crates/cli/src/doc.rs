//! Function-specification documents.
//!
//! A document is a JSON object with named expressions (nested objects with a
//! `type` discriminator mirroring the expression variants) and named
//! families (ordered lists of expression names). Parsing is strict: unknown
//! fields and unresolved names are rejected with a located diagnostic.

use std::collections::BTreeMap;

use deepzero_core::{FuncExpr, C64};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentRaw {
    #[serde(default)]
    pub functions: BTreeMap<String, ExprNode>,
    #[serde(default)]
    pub families: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ExprNode {
    Monomial {
        d: u32,
    },
    Polynomial {
        coeffs: Vec<[f64; 2]>,
    },
    Expatom {
        mu: [f64; 2],
    },
    Blaschkefactor {
        a: [f64; 2],
    },
    Singularatom {
        zeta_arg_over_pi: f64,
        mass: f64,
    },
    Sum {
        children: Vec<ExprNode>,
    },
    Product {
        children: Vec<ExprNode>,
    },
    Power {
        child: Box<ExprNode>,
        k: u32,
    },
    Scale {
        child: Box<ExprNode>,
        lambda: [f64; 2],
    },
    Shiftarg {
        child: Box<ExprNode>,
        a: [f64; 2],
        b: [f64; 2],
    },
    Recip {
        child: Box<ExprNode>,
    },
}

fn cx(v: [f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

impl ExprNode {
    /// Lower to the expression type; invariant violations surface with the
    /// owning function's name.
    pub fn lower(&self, ctx: &str) -> Result<FuncExpr, CliError> {
        let math = |e: deepzero_core::Error| CliError::Math(format!("function '{ctx}': {e}"));
        Ok(match self {
            ExprNode::Monomial { d } => FuncExpr::monomial(*d),
            ExprNode::Polynomial { coeffs } => {
                FuncExpr::polynomial(coeffs.iter().map(|&c| cx(c)).collect())
            }
            ExprNode::Expatom { mu } => FuncExpr::exp_atom(cx(*mu)),
            ExprNode::Blaschkefactor { a } => FuncExpr::blaschke_factor(cx(*a)).map_err(math)?,
            ExprNode::Singularatom {
                zeta_arg_over_pi,
                mass,
            } => FuncExpr::singular_atom(*zeta_arg_over_pi, *mass).map_err(math)?,
            ExprNode::Sum { children } => FuncExpr::sum(
                children
                    .iter()
                    .map(|c| c.lower(ctx))
                    .collect::<Result<_, _>>()?,
            ),
            ExprNode::Product { children } => FuncExpr::product(
                children
                    .iter()
                    .map(|c| c.lower(ctx))
                    .collect::<Result<_, _>>()?,
            ),
            ExprNode::Power { child, k } => FuncExpr::power(child.lower(ctx)?, *k),
            ExprNode::Scale { child, lambda } => FuncExpr::scale(child.lower(ctx)?, cx(*lambda)),
            ExprNode::Shiftarg { child, a, b } => {
                FuncExpr::shift_arg(child.lower(ctx)?, cx(*a), cx(*b))
            }
            ExprNode::Recip { child } => FuncExpr::recip(child.lower(ctx)?),
        })
    }
}

/// A validated document: every expression lowered, every family resolved.
#[derive(Debug)]
pub struct Document {
    pub functions: BTreeMap<String, FuncExpr>,
    pub families: BTreeMap<String, Vec<String>>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, CliError> {
        let raw: DocumentRaw = serde_json::from_str(text).map_err(|e| {
            CliError::Usage(format!(
                "document parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        let mut functions = BTreeMap::new();
        for (name, node) in &raw.functions {
            functions.insert(name.clone(), node.lower(name)?);
        }
        for (fam, members) in &raw.families {
            for m in members {
                if !functions.contains_key(m) {
                    return Err(CliError::Usage(format!(
                        "family '{fam}' references undefined function '{m}'"
                    )));
                }
            }
            if members.is_empty() {
                return Err(CliError::Usage(format!("family '{fam}' is empty")));
            }
        }
        Ok(Document {
            functions,
            families: raw.families,
        })
    }

    pub fn load(path: &str) -> Result<Document, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read document '{path}': {e}")))?;
        Document::parse(&text)
    }

    pub fn function(&self, name: &str) -> Result<&FuncExpr, CliError> {
        self.functions
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no function named '{name}' in the document")))
    }

    pub fn family(&self, name: &str) -> Result<Vec<FuncExpr>, CliError> {
        let members = self
            .families
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no family named '{name}' in the document")))?;
        members.iter().map(|m| self.function(m).cloned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let doc = Document::parse(r#"{"functions": {"f": {"type":"monomial","d":2}}}"#).unwrap();
        assert_eq!(doc.functions.len(), 1);
        assert!(doc.function("f").is_ok());
    }

    #[test]
    fn rejects_invariant_violation_as_math_error() {
        let err = Document::parse(
            r#"{"functions": {"b": {"type":"blaschkefactor","a":[1.2,0.0]}}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Math(_)), "{err:?}");
        assert!(format!("{err}").contains("|a| < 1"));
    }

    #[test]
    fn rejects_unknown_fields_and_unresolved_names() {
        assert!(matches!(
            Document::parse(r#"{"functions": {"f": {"type":"monomial","d":2,"x":1}}}"#),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            Document::parse(r#"{"functions": {}, "families": {"F": ["ghost"]}}"#),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            Document::parse(r#"{"functions": {"f": {"type":"mystery"}}}"#),
            Err(CliError::Usage(_))
        ));
    }
}
