//! Parser for the row-definition document (see `tables.txt` for the grammar).

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{
    C2Order, Case, Coef, Component, Expr, Factor, PairPrediction, Relation, RowCondition,
    ScenarioRow, Weight, WeightRelation,
};
use crate::error::{Error, Result};

/// Coefficient index bound (components are 3-dimensional).
const DIM: usize = 3;

/// Parses every non-blank, non-comment line into a [`ScenarioRow`].
pub fn load_scenario_rows(source: &str) -> Result<Vec<ScenarioRow>> {
    let mut rows: Vec<ScenarioRow> = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = parse_row(line).map_err(|message| Error::RowSyntax { line: line_no, message })?;
        if rows.iter().any(|r| r.id == row.id) {
            return Err(Error::RowSyntax { line: line_no, message: format!("duplicate row id {}", row.id) });
        }
        rows.push(row);
    }
    Ok(rows)
}

type Parse<T> = core::result::Result<T, String>;

fn parse_row(line: &str) -> Parse<ScenarioRow> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    if !(6..=7).contains(&fields.len()) {
        return Err(format!("expected 6 or 7 '|'-separated fields, found {}", fields.len()));
    }
    let case = Case::parse(fields[0]).ok_or_else(|| format!("unknown case '{}'", fields[0]))?;
    let id = fields[1];
    if id.is_empty() || id.contains(char::is_whitespace) {
        return Err(format!("bad row id '{id}'"));
    }
    let weights = match fields[2] {
        "alpha=alpha'" => WeightRelation::Equal,
        "alpha>alpha'" => WeightRelation::AlphaGreater,
        "alpha<alpha'" => WeightRelation::AlphaLess,
        other => return Err(format!("unknown weight relation '{other}'")),
    };
    let (conditions, conditions_unspecified) = match fields[3] {
        "-" => (Vec::new(), false),
        "unspecified" => (Vec::new(), true),
        text => (parse_conditions(text)?, false),
    };
    let predicted_pair = match fields[4] {
        "-" => None,
        "INCOMPARABLE" => Some(PairPrediction::Incomparable),
        "COMPARABLE" => Some(PairPrediction::Comparable),
        other => return Err(format!("unknown pair verdict '{other}'")),
    };
    let predicted_c2 = match fields[5] {
        "-" => None,
        "C2(G)>C2(G')" => Some(C2Order::Greater),
        "C2(G)<C2(G')" => Some(C2Order::Less),
        other => return Err(format!("unknown concurrence order '{other}'")),
    };
    let note = fields.get(6).filter(|s| !s.is_empty()).map(|s| (*s).to_owned());
    let table = id.split('-').next().unwrap_or(id).to_string();
    Ok(ScenarioRow {
        case,
        table,
        id: id.to_string(),
        weights,
        conditions,
        conditions_unspecified,
        predicted_pair,
        predicted_c2,
        note,
    })
}

fn parse_conditions(text: &str) -> Parse<Vec<Vec<RowCondition>>> {
    text.split(" OR ")
        .map(|group| group.split(';').map(|c| parse_condition(c.trim())).collect())
        .collect()
}

fn parse_condition(text: &str) -> Parse<RowCondition> {
    let (at, op, width) = if let Some(at) = text.find("<>") {
        (at, Relation::NotEqual, 2)
    } else if let Some(at) = text.find('<') {
        (at, Relation::Less, 1)
    } else if let Some(at) = text.find('>') {
        (at, Relation::Greater, 1)
    } else {
        return Err(format!("no comparison operator in '{text}'"));
    };
    let lhs = parse_expr(text[..at].trim())?;
    let rhs_text = text[at + width..].trim();
    if rhs_text.contains(['<', '>']) {
        return Err(format!("more than one operator in '{text}'"));
    }
    let rhs = parse_expr(rhs_text)?;
    Ok(RowCondition { lhs, op, rhs })
}

fn parse_expr(text: &str) -> Parse<Expr> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty expression".to_string());
    }
    if let Some(inner) = compact.strip_prefix('(').and_then(|s| s.strip_suffix(")^2")) {
        return parse_amplitude(inner);
    }
    if compact.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        return compact.parse::<f64>().map(Expr::Constant).map_err(|_| format!("bad number '{compact}'"));
    }
    compact.split('*').map(parse_factor).collect::<Parse<Vec<_>>>().map(Expr::Product)
}

fn parse_amplitude(inner: &str) -> Parse<Expr> {
    let (left, right) = inner.split_once('+').ok_or_else(|| format!("expected U*sqrt(X)+V*sqrt(Y), got '{inner}'"))?;
    let (u, x) = parse_scaled_root(left)?;
    let (v, y) = parse_scaled_root(right)?;
    Ok(Expr::AmplitudeSquare { u, x, v, y })
}

fn parse_scaled_root(text: &str) -> Parse<(Weight, Coef)> {
    let (w, rest) = text.split_once('*').ok_or_else(|| format!("expected W*sqrt(COEF), got '{text}'"))?;
    let weight = parse_weight(w)?;
    let coef = rest
        .strip_prefix("sqrt(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| format!("expected sqrt(COEF), got '{rest}'"))?;
    Ok((weight, parse_coef(coef)?))
}

fn parse_factor(text: &str) -> Parse<Factor> {
    match text.strip_suffix("^2") {
        Some(w) => parse_weight(w).map(Factor::WeightSquared),
        None => parse_coef(text).map(Factor::Coef),
    }
}

fn parse_weight(text: &str) -> Parse<Weight> {
    match text {
        "alpha" => Ok(Weight::Alpha),
        "beta" => Ok(Weight::Beta),
        "alpha'" => Ok(Weight::AlphaPrime),
        "beta'" => Ok(Weight::BetaPrime),
        other => Err(format!("unknown weight '{other}'")),
    }
}

fn parse_coef(text: &str) -> Parse<Coef> {
    let split = text.find(|c: char| c.is_ascii_digit()).ok_or_else(|| format!("coefficient '{text}' has no index"))?;
    let (name, digits) = text.split_at(split);
    let component = match name {
        "a" => Component::Psi,
        "b" => Component::Phi,
        "alpha" => Component::PsiPrime,
        "beta" => Component::PhiPrime,
        other => return Err(format!("unknown coefficient name '{other}'")),
    };
    let index: usize = digits.parse().map_err(|_| format!("bad coefficient index in '{text}'"))?;
    if index >= DIM {
        return Err(format!("coefficient index {index} out of range in '{text}'"));
    }
    Ok(Coef { component, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_rows_parse() {
        let rows = load_scenario_rows(super::super::BUILTIN_ROWS).unwrap();
        assert_eq!(rows.len(), 5 + 5 + 6 + 6 + 5 + 5 + 3 + 3);
        let r = &rows[0];
        assert_eq!((r.case, r.id.as_str(), r.table.as_str()), (Case::I, "1-1", "1"));
        assert_eq!(r.weights, WeightRelation::Equal);
        assert!(r.conditions.is_empty());
        assert_eq!(r.predicted_pair, Some(PairPrediction::Incomparable));

        let r = rows.iter().find(|r| r.id == "1-4").unwrap();
        assert_eq!(r.weights, WeightRelation::AlphaGreater);
        assert_eq!(r.conditions.len(), 1);
        assert_eq!(r.conditions[0].len(), 3);
        assert_eq!(r.predicted_pair, Some(PairPrediction::Comparable));

        let r = rows.iter().find(|r| r.id == "2A-6").unwrap();
        assert_eq!(r.conditions.len(), 4);
        assert_eq!(r.predicted_c2, Some(C2Order::Greater));
        assert_eq!(r.table, "2A");

        let r = rows.iter().find(|r| r.id == "5-2").unwrap();
        assert!(r.conditions_unspecified && r.predicted_pair.is_none());
        assert!(rows.iter().find(|r| r.id == "2-3").unwrap().note.is_some());
    }

    #[test]
    fn condition_shapes() {
        let c = parse_condition("beta^2*b0 > beta'^2*beta0").unwrap();
        assert_eq!(c.op, Relation::Greater);
        assert_eq!(
            c.lhs,
            Expr::Product(vec![
                Factor::WeightSquared(Weight::Beta),
                Factor::Coef(Coef { component: Component::Phi, index: 0 })
            ])
        );
        let c = parse_condition("(alpha'*sqrt(alpha1)+beta'*sqrt(beta1))^2 <> 0.5").unwrap();
        assert_eq!(c.op, Relation::NotEqual);
        assert_eq!(c.rhs, Expr::Constant(0.5));
        assert!(matches!(c.lhs, Expr::AmplitudeSquare { u: Weight::AlphaPrime, .. }));
        let c = parse_condition("a2*b2 < alpha2*beta2").unwrap();
        assert_eq!(c.op, Relation::Less);
    }

    #[test]
    fn empty_document() {
        assert!(load_scenario_rows("").unwrap().is_empty());
        assert!(load_scenario_rows("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn errors_name_the_line() {
        let doc = "I | 1-1 | alpha=alpha' | - | INCOMPARABLE | -\nI | 1-2 | alpha>alpha' | gamma^2*b0 > 0.5 | - | -\n";
        match load_scenario_rows(doc) {
            Err(Error::RowSyntax { line: 2, message }) => assert!(message.contains("gamma")),
            other => panic!("unexpected {other:?}"),
        }
        for bad in [
            "VI | x | alpha=alpha' | - | - | -",
            "I | x | alpha=beta | - | - | -",
            "I | x | alpha=alpha' | a3 > 0.5 | - | -",
            "I | x | alpha=alpha' | a1 = 0.5 | - | -",
            "I | x | alpha=alpha' | - | MAYBE | -",
            "I | x | alpha=alpha'",
        ] {
            assert!(load_scenario_rows(bad).is_err(), "{bad}");
        }
        let dup = "I | x | alpha=alpha' | - | - | -\nI | x | alpha=alpha' | - | - | -";
        assert!(matches!(load_scenario_rows(dup), Err(Error::RowSyntax { line: 2, .. })));
    }
}
