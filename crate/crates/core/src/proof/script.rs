//! Proof-script text format.
//!
//! ```text
//! step s1:
//!   formula: forall x . [{y := 0; while !(y = x) do y := s(y) od}] (x = y)
//!   by: theory Th3 S
//! template t1:
//!   step u1:
//!     formula: ([y := 0] [y := s(y)]^i (z = y) -> [x := 0] U[x := s(x)] (z = x))
//!     by: trusted rename validate bound=3 budget=200
//! end
//! step s2:
//!   formula: ([y := 0] U[y := s(y)] (z = y) -> [x := 0] U[x := s(x)] (z = x))
//!   by: omega R4 template t1 samples 5
//! ```
//!
//! Inside templates `[K]^i` stands for `i` copies of `[K]` and `s^i(t)` for
//! `i` applications of `s`. Lines starting with `#` are comments; a line that
//! starts no field continues the previous one.

use std::collections::BTreeMap;

use crate::syntax::{parse_formula, parse_program, Formula};

use super::rules::{Extras, OmegaRule, Rule};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Justification {
    /// Bindings stay as text until the schema fixes their sorts.
    Axiom { schema: String, binds: Vec<(String, String)> },
    Theory { theory: String, name: String, phi: Option<Formula> },
    Rule { rule: Rule, from: Vec<String>, extras: Extras },
    Omega { rule: OmegaRule, template: String, samples: usize },
    Trusted { name: String, bound: usize, budget: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub id: String,
    pub formula: Formula,
    pub by: Justification,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RawStep {
    id: String,
    formula: String,
    by: String,
    line: usize,
    formula_line: usize,
    by_line: usize,
}

/// A proof fragment parameterized by the index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub id: String,
    steps: Vec<RawStep>,
}

impl Template {
    pub fn instance(&self, i: usize) -> Result<Vec<Step>, ScriptError> {
        self.steps
            .iter()
            .map(|raw| {
                let err = |message| ScriptError {
                    line: raw.line,
                    message,
                };
                let expanded = RawStep {
                    id: raw.id.clone(),
                    formula: expand_index(&raw.formula, i).map_err(err)?,
                    by: expand_index(&raw.by, i).map_err(err)?,
                    ..raw.clone()
                };
                parse_step(&expanded)
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Script {
    pub steps: Vec<Step>,
    pub templates: BTreeMap<String, Template>,
}

/// Finds the `(` matching the one at `open` scanning forward, or the `[`
/// matching the `]` at `close` scanning backward.
fn matching_forward(text: &[u8], open: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (j, &c) in text.iter().enumerate().skip(open) {
        match c {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(j);
                }
            }
            _ => {}
        }
    }
    None
}

fn matching_backward(text: &[u8], close: usize) -> Option<usize> {
    let mut depth = 0usize;
    for j in (0..=close).rev() {
        match text[j] {
            b']' => depth += 1,
            b'[' => {
                depth -= 1;
                if depth == 0 {
                    return Some(j);
                }
            }
            _ => {}
        }
    }
    None
}

fn index_at(text: &str, at: usize) -> bool {
    text[at..].starts_with("^i")
        && !text[at + 2..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Expands `[K]^i` and `s^i(t)` for a concrete `i`.
pub fn expand_index(text: &str, i: usize) -> Result<String, String> {
    let mut out = text.to_string();
    loop {
        let Some(at) = (0..out.len()).find(|&j| out.is_char_boundary(j) && index_at(&out, j)) else {
            return Ok(out);
        };
        let bytes = out.as_bytes();
        if at > 0 && bytes[at - 1] == b']' {
            let open = matching_backward(bytes, at - 1).ok_or("unbalanced `]^i`")?;
            let block = &out[open..at];
            let repeated = vec![block; i].join(" ");
            out = format!("{}{}{}", &out[..open], repeated, &out[at + 2..]);
        } else if at > 0 && bytes[at - 1] == b's' && bytes.get(at + 2) == Some(&b'(') {
            let close = matching_forward(bytes, at + 2).ok_or("unbalanced `s^i(`")?;
            let inner = &out[at + 3..close];
            let tower = format!("{}{}{}", "s(".repeat(i), inner, ")".repeat(i));
            out = format!("{}{}{}", &out[..at - 1], tower, &out[close + 1..]);
        } else {
            return Err("`^i` must follow `]` or `s`".to_string());
        }
    }
}

fn formula(text: &str, line: usize) -> Result<Formula, ScriptError> {
    parse_formula(text).map_err(|e| ScriptError {
        line,
        message: format!("{e}"),
    })
}

fn key_value(token: &str, line: usize) -> Result<(String, String), ScriptError> {
    token
        .split_once('=')
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .ok_or_else(|| ScriptError {
            line,
            message: format!("expected NAME=VALUE, found `{token}`"),
        })
}

fn parse_step(raw: &RawStep) -> Result<Step, ScriptError> {
    let line = raw.by_line;
    let err = |message: String| ScriptError { line, message };
    // `R2'` would read as an open quote.
    let by_text = raw.by.replace("R2'", "R2prime");
    let tokens = shlex::split(&by_text).ok_or_else(|| err(format!("unbalanced quotes in `{}`", raw.by)))?;
    let word = |i: usize| tokens.get(i).map(String::as_str);
    let number = |key: &str, text: &str| -> Result<u64, ScriptError> {
        text.parse()
            .map_err(|_| err(format!("{key} must be a natural number, found `{text}`")))
    };
    let by = match word(0) {
        Some("axiom") => {
            let schema = word(1).ok_or_else(|| err("axiom needs a schema name".into()))?;
            let binds = tokens[2..]
                .iter()
                .filter(|t| t.as_str() != "bind")
                .map(|t| key_value(t, line))
                .collect::<Result<_, _>>()?;
            Justification::Axiom {
                schema: schema.to_string(),
                binds,
            }
        }
        Some("theory") => {
            let (Some(theory), Some(name)) = (word(1), word(2)) else {
                return Err(err("theory needs a theory and an axiom name".into()));
            };
            let phi = match tokens.get(3) {
                None => None,
                Some(t) => {
                    let (k, v) = key_value(t, line)?;
                    if k != "phi" {
                        return Err(err(format!("unexpected `{k}`")));
                    }
                    Some(formula(&v, line)?)
                }
            };
            Justification::Theory {
                theory: theory.to_string(),
                name: name.to_string(),
                phi,
            }
        }
        Some("rule") => {
            let rule: Rule = word(1)
                .ok_or_else(|| err("rule needs a rule name".into()))?
                .parse()
                .map_err(err)?;
            let mut from = Vec::new();
            let mut extras = Extras::default();
            let mut rest = tokens[2..].iter();
            match rest.next().map(String::as_str) {
                Some("from") => {}
                None => {}
                Some(other) => return Err(err(format!("expected `from`, found `{other}`"))),
            }
            let mut in_with = false;
            for t in rest {
                if t == "with" {
                    in_with = true;
                } else if in_with {
                    let (k, v) = key_value(t, line)?;
                    match k.as_str() {
                        "K" | "M" => {
                            extras.program = Some(parse_program(&v).map_err(|e| err(format!("{e}")))?)
                        }
                        "x" => extras.var = Some(v),
                        _ => return Err(err(format!("unknown extra `{k}`"))),
                    }
                } else {
                    from.extend(t.split(',').filter(|s| !s.is_empty()).map(str::to_string));
                }
            }
            Justification::Rule { rule, from, extras }
        }
        Some("omega") => {
            let rule: OmegaRule = word(1)
                .ok_or_else(|| err("omega needs a rule".into()))?
                .parse()
                .map_err(err)?;
            let (Some("template"), Some(template), Some("samples"), Some(n)) = (word(2), word(3), word(4), word(5))
            else {
                return Err(err("expected `omega <rule> template <id> samples <n>`".into()));
            };
            let samples = number("samples", n)? as usize;
            if samples == 0 {
                return Err(err("samples must be at least 1".into()));
            }
            Justification::Omega {
                rule,
                template: template.to_string(),
                samples,
            }
        }
        Some("trusted") => {
            let name = word(1).ok_or_else(|| err("trusted needs a lemma name".into()))?;
            if word(2) != Some("validate") {
                return Err(err("expected `validate` after the lemma name".into()));
            }
            let (mut bound, mut budget) = (None, None);
            for t in &tokens[3..] {
                let (k, v) = key_value(t, line)?;
                match k.as_str() {
                    "bound" => bound = Some(number("bound", &v)? as usize),
                    "budget" => budget = Some(number("budget", &v)?),
                    _ => return Err(err(format!("unknown parameter `{k}`"))),
                }
            }
            let (Some(bound), Some(budget)) = (bound, budget) else {
                return Err(err("trusted lemmas need bound= and budget=".into()));
            };
            if bound == 0 || budget == 0 {
                return Err(err("bound and budget must be at least 1".into()));
            }
            Justification::Trusted {
                name: name.to_string(),
                bound,
                budget,
            }
        }
        Some(other) => return Err(err(format!("unknown justification `{other}`"))),
        None => return Err(err("empty justification".into())),
    };
    Ok(Step {
        id: raw.id.clone(),
        formula: formula(&raw.formula, raw.formula_line)?,
        by,
        line: raw.line,
    })
}

enum Field {
    Formula,
    By,
}

pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut script = Script::default();
    let mut raws: Vec<(Option<String>, RawStep)> = Vec::new();
    let mut template: Option<String> = None;
    let mut field: Option<Field> = None;
    for (n, full) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| ScriptError { line, message };
        let t = full.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("step ") {
            let id = rest
                .strip_suffix(':')
                .ok_or_else(|| err("expected `step <id>:`".into()))?
                .trim();
            raws.push((
                template.clone(),
                RawStep {
                    id: id.to_string(),
                    formula: String::new(),
                    by: String::new(),
                    line,
                    formula_line: line,
                    by_line: line,
                },
            ));
            field = None;
        } else if let Some(rest) = t.strip_prefix("template ") {
            if template.is_some() {
                return Err(err("templates do not nest".into()));
            }
            let id = rest
                .strip_suffix(':')
                .ok_or_else(|| err("expected `template <id>:`".into()))?
                .trim();
            if script.templates.contains_key(id) {
                return Err(err(format!("template `{id}` defined twice")));
            }
            script.templates.insert(
                id.to_string(),
                Template {
                    id: id.to_string(),
                    steps: Vec::new(),
                },
            );
            template = Some(id.to_string());
            field = None;
        } else if t == "end" {
            if template.take().is_none() {
                return Err(err("`end` outside a template".into()));
            }
            field = None;
        } else {
            let Some((_, current)) = raws.last_mut() else {
                return Err(err(format!("unexpected `{t}` before any step")));
            };
            let (target, value) = if let Some(v) = t.strip_prefix("formula:") {
                field = Some(Field::Formula);
                current.formula_line = line;
                (&mut current.formula, v)
            } else if let Some(v) = t.strip_prefix("by:") {
                field = Some(Field::By);
                current.by_line = line;
                (&mut current.by, v)
            } else {
                match field {
                    Some(Field::Formula) => (&mut current.formula, t),
                    Some(Field::By) => (&mut current.by, t),
                    None => return Err(err(format!("unexpected `{t}`"))),
                }
            };
            if !target.is_empty() {
                target.push(' ');
            }
            target.push_str(value.trim());
        }
    }
    if let Some(id) = template {
        return Err(ScriptError {
            line: text.lines().count(),
            message: format!("template `{id}` is missing `end`"),
        });
    }
    for (owner, raw) in raws {
        if raw.formula.is_empty() || raw.by.is_empty() {
            return Err(ScriptError {
                line: raw.line,
                message: format!("step `{}` needs both formula: and by:", raw.id),
            });
        }
        match owner {
            Some(t) => script.templates.get_mut(&t).expect("opened above").steps.push(raw),
            None => script.steps.push(parse_step(&raw)?),
        }
    }
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_expansion() {
        assert_eq!(expand_index("[x := s(x)]^i (x = y)", 2).unwrap(), "[x := s(x)] [x := s(x)] (x = y)");
        assert_eq!(expand_index("[x := s(x)]^i (x = y)", 0).unwrap(), " (x = y)");
        assert_eq!(expand_index("(x = s^i(0))", 3).unwrap(), "(x = s(s(s(0))))");
        assert!(expand_index("a]^i", 1).is_err());
        assert!(expand_index("x^i", 1).is_err());
        assert_eq!(expand_index("[k]^index", 1).unwrap(), "[k]^index");
    }

    #[test]
    fn parses_steps_and_templates() {
        let text = "\
# a comment
step s1:
  formula: (0 = 0)
  by: trusted refl validate bound=2 budget=10
template t:
  step u:
    formula: ([y := 0] [y := s(y)]^i (z = y) ->
      [x := 0] U[x := s(x)] (z = x))
    by: trusted rename validate bound=3 budget=200
end
step s2:
  formula: ([y := 0] U[y := s(y)] (z = y) -> [x := 0] U[x := s(x)] (z = x))
  by: omega R4 template t samples 4
step s3:
  formula: (0 = 0)
  by: rule R1 from s1, s2 with x=y
step s4:
  formula: (0 = 0)
  by: axiom Ax11 bind alpha=\"(0 = 0)\"
";
        let script = parse_script(text).unwrap();
        assert_eq!(script.steps.len(), 4);
        assert_eq!(
            script.steps[2].by,
            Justification::Rule {
                rule: Rule::R1,
                from: vec!["s1".into(), "s2".into()],
                extras: Extras {
                    program: None,
                    var: Some("y".into())
                }
            }
        );
        assert_eq!(
            script.steps[3].by,
            Justification::Axiom {
                schema: "Ax11".into(),
                binds: vec![("alpha".into(), "(0 = 0)".into())]
            }
        );
        let inst = script.templates["t"].instance(1).unwrap();
        assert_eq!(
            inst[0].formula,
            parse_formula("([y := 0] [y := s(y)] (z = y) -> [x := 0] U[x := s(x)] (z = x))").unwrap()
        );
    }

    #[test]
    fn zero_samples_are_refused() {
        let text = "step s:\n  formula: (0 = 0)\n  by: omega R4 template t samples 0\n";
        let e = parse_script(text).unwrap_err();
        assert_eq!(e.line, 3);
    }
}
