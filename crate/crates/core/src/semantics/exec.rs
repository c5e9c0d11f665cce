use crate::syntax::{first_occurrence_order, Ident, Open, Program, Term};

use super::{EvalConfig, EvalError, Structure, Valuation};

pub fn eval_term<S: Structure>(s: &S, t: &Term, v: &Valuation<S::Elem>) -> Result<S::Elem, EvalError> {
    Ok(match t {
        Term::Var(x) => v
            .get(x)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(x.clone()))?,
        Term::Zero => s.zero(),
        Term::Succ(a) => s.succ(&eval_term(s, a, v)?),
        Term::Pred(a) => s.pred(&eval_term(s, a, v)?)?,
        Term::Add(l, r) => s.add(&eval_term(s, l, v)?, &eval_term(s, r, v)?),
        Term::Mul(l, r) => s.mul(&eval_term(s, l, v)?, &eval_term(s, r, v)?)?,
        Term::Monus(l, r) => s.monus(&eval_term(s, l, v)?, &eval_term(s, r, v)?)?,
    })
}

pub fn eval_open<S: Structure>(s: &S, g: &Open, v: &Valuation<S::Elem>) -> Result<bool, EvalError> {
    Ok(match g {
        Open::Eq(l, r) => s.equal(&eval_term(s, l, v)?, &eval_term(s, r, v)?),
        Open::Less(l, r) => s.less(&eval_term(s, l, v)?, &eval_term(s, r, v)?),
        Open::True => true,
        Open::False => false,
        Open::And(l, r) => eval_open(s, l, v)? && eval_open(s, r, v)?,
        Open::Or(l, r) => eval_open(s, l, v)? || eval_open(s, r, v)?,
        Open::Implies(l, r) => !eval_open(s, l, v)? || eval_open(s, r, v)?,
        Open::Not(a) => !eval_open(s, a, v)?,
        Open::BoolVar(q) => *v
            .boolean
            .get(q)
            .ok_or_else(|| EvalError::UnboundBoolVariable(q.clone()))?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow<E> {
    pub step: u64,
    pub state: Valuation<E>,
}

/// Snapshots of the memory: the initial valuation, then one row after every
/// assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace<E> {
    pub columns: Vec<Ident>,
    pub rows: Vec<TraceRow<E>>,
}

impl<E: Clone> Trace<E> {
    /// The value of `x` in every row, in order.
    pub fn column(&self, x: &str) -> Vec<Option<E>> {
        self.rows.iter().map(|r| r.state.get(x).cloned()).collect()
    }

    /// `step | n | m` followed by one line per row.
    pub fn render<S: Structure<Elem = E>>(&self, s: &S) -> String {
        let mut out = String::from("step");
        for c in &self.columns {
            out.push_str(" | ");
            out.push_str(c);
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.step.to_string());
            for c in &self.columns {
                out.push_str(" | ");
                match row.state.get(c) {
                    Some(e) => out.push_str(&s.format_elem(e)),
                    None => out.push('-'),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// A `while` loop that was executing when the budget ran out, with the
/// memory as it was at its most recent guard test.
#[derive(Clone, Debug, PartialEq)]
pub struct ActiveLoop<E> {
    pub program: Program,
    pub head: Valuation<E>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RunOutcome<E> {
    Halted {
        final_state: Valuation<E>,
        steps: u64,
        trace: Trace<E>,
    },
    BudgetExhausted {
        state: Valuation<E>,
        steps: u64,
        trace: Trace<E>,
        /// Outermost first.
        active_loops: Vec<ActiveLoop<E>>,
    },
    RuntimeError(EvalError),
}

impl<E> RunOutcome<E> {
    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }

    pub fn final_state(&self) -> Option<&Valuation<E>> {
        match self {
            RunOutcome::Halted { final_state, .. } => Some(final_state),
            _ => None,
        }
    }

    pub fn trace(&self) -> Option<&Trace<E>> {
        match self {
            RunOutcome::Halted { trace, .. } | RunOutcome::BudgetExhausted { trace, .. } => Some(trace),
            RunOutcome::RuntimeError(_) => None,
        }
    }

    pub fn steps(&self) -> Option<u64> {
        match self {
            RunOutcome::Halted { steps, .. } | RunOutcome::BudgetExhausted { steps, .. } => Some(*steps),
            RunOutcome::RuntimeError(_) => None,
        }
    }
}

enum Stop<E> {
    Exhausted(Vec<ActiveLoop<E>>),
    Error(EvalError),
}

impl<E> From<EvalError> for Stop<E> {
    fn from(e: EvalError) -> Self {
        Stop::Error(e)
    }
}

struct Machine<'a, S: Structure> {
    s: &'a S,
    budget: u64,
    steps: u64,
    trace: Option<Vec<TraceRow<S::Elem>>>,
    loops: Vec<(&'a Program, Valuation<S::Elem>)>,
}

impl<'a, S: Structure> Machine<'a, S> {
    fn tick(&mut self) -> Result<(), Stop<S::Elem>> {
        if self.steps >= self.budget {
            return Err(Stop::Exhausted(
                self.loops
                    .iter()
                    .map(|(k, head)| ActiveLoop {
                        program: (*k).clone(),
                        head: head.clone(),
                    })
                    .collect(),
            ));
        }
        self.steps += 1;
        Ok(())
    }

    fn record(&mut self, v: &Valuation<S::Elem>) {
        if let Some(rows) = &mut self.trace {
            rows.push(TraceRow {
                step: self.steps,
                state: v.clone(),
            });
        }
    }

    fn exec(&mut self, k: &'a Program, v: &mut Valuation<S::Elem>) -> Result<(), Stop<S::Elem>> {
        match k {
            Program::Assign(x, t) => {
                self.tick()?;
                let e = eval_term(self.s, t, v)?;
                v.set(x, e);
                self.record(v);
            }
            Program::BoolAssign(q, g) => {
                self.tick()?;
                let b = eval_open(self.s, g, v)?;
                v.boolean.insert(q.clone(), b);
                self.record(v);
            }
            Program::Seq(a, b) => {
                self.exec(a, v)?;
                self.exec(b, v)?;
            }
            Program::If(g, a, b) => {
                self.tick()?;
                if eval_open(self.s, g, v)? {
                    self.exec(a, v)?;
                } else {
                    self.exec(b, v)?;
                }
            }
            Program::While(g, body) => {
                self.loops.push((k, v.clone()));
                let depth = self.loops.len() - 1;
                loop {
                    self.loops[depth].1 = v.clone();
                    self.tick()?;
                    if !eval_open(self.s, g, v)? {
                        break;
                    }
                    self.exec(body, v)?;
                }
                self.loops.pop();
            }
            Program::Skip => {}
        }
        Ok(())
    }
}

/// Runs `k` from `v` for at most `cfg.step_budget` steps. Every assignment
/// and every guard test costs one step; `skip` is free.
pub fn run_program<S: Structure>(
    s: &S,
    k: &Program,
    v: &Valuation<S::Elem>,
    cfg: &EvalConfig,
) -> RunOutcome<S::Elem> {
    let mut m = Machine {
        s,
        budget: cfg.step_budget,
        steps: 0,
        trace: cfg.trace_on.then(|| {
            vec![TraceRow {
                step: 0,
                state: v.clone(),
            }]
        }),
        loops: Vec::new(),
    };
    let mut state = v.clone();
    let result = m.exec(k, &mut state);
    let trace = Trace {
        columns: if cfg.trace_on {
            first_occurrence_order(k)
        } else {
            Vec::new()
        },
        rows: m.trace.take().unwrap_or_default(),
    };
    match result {
        Ok(()) => RunOutcome::Halted {
            final_state: state,
            steps: m.steps,
            trace,
        },
        Err(Stop::Exhausted(active_loops)) => RunOutcome::BudgetExhausted {
            state,
            steps: m.steps,
            trace,
            active_loops,
        },
        Err(Stop::Error(e)) => RunOutcome::RuntimeError(e),
    }
}

/// Number of completed body executions of the outermost `while` in `k`
/// during a halting run, counted from the trace-free interpreter.
pub fn loop_iterations<S: Structure>(
    s: &S,
    k: &Program,
    v: &Valuation<S::Elem>,
    cfg: &EvalConfig,
) -> Result<Option<u64>, EvalError> {
    let Program::While(g, body) = k else {
        return Ok(Some(0));
    };
    let mut state = v.clone();
    let mut count = 0u64;
    let mut spent = 0u64;
    loop {
        spent += 1;
        if spent > cfg.step_budget {
            return Ok(None);
        }
        if !eval_open(s, g, &state)? {
            return Ok(Some(count));
        }
        let sub = EvalConfig {
            step_budget: cfg.step_budget - spent,
            trace_on: false,
            ..cfg.clone()
        };
        match run_program(s, body, &state, &sub) {
            RunOutcome::Halted {
                final_state, steps, ..
            } => {
                state = final_state;
                spent += steps;
                count += 1;
            }
            RunOutcome::BudgetExhausted { .. } => return Ok(None),
            RunOutcome::RuntimeError(e) => return Err(e),
        }
    }
}
