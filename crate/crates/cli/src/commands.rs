use std::io::{self, Write};
use std::process::ExitCode;

use cwforest::forest::MAX_BOUND;
use cwforest::{
    decode_uv_code, depth_of, encode_uv_code, index_to_word, is_descendant, mirror_matrix, orphan_ancestor,
    orphans_in_box, parent, path_between, position_matrix, run_suite, successor, uv_code_root, BinaryCode, Error,
    ParentCode, ParentResult, PathWord, Position, Rational, Suite, SuiteConfig, Tree, UVParams,
};
use serde_json::{json, Value};

use crate::{Cli, Cmd, Opts};

pub enum Failure {
    /// Bad input values or a question with no answer; exit status 1.
    Domain(String),
    /// Missing flags; exit status 2.
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

fn positive(s: &str) -> Result<Rational, Failure> {
    let r: Rational = s.parse()?;
    r.require_positive()?;
    Ok(r)
}

fn need(flag: Option<u64>, name: &str, cmd: &str) -> Result<u64, Failure> {
    flag.ok_or_else(|| Failure::Usage(format!("`{cmd}` needs {name}")))
}

struct Ctx<'a, W: Write> {
    opts: &'a Opts,
    params: UVParams,
    root: Rational,
    out: &'a mut W,
}

impl<W: Write> Ctx<'_, W> {
    fn tree(&self) -> Result<Tree, Failure> {
        Ok(Tree::new(self.root.clone(), self.params)?.with_max_row(self.opts.max_row))
    }

    /// Writes `record` in JSON mode and `text` otherwise.
    fn emit(&mut self, record: Value, text: &str) -> io::Result<()> {
        if self.opts.json {
            writeln!(self.out, "{record}")
        } else {
            writeln!(self.out, "{text}")
        }
    }

    fn position(&self, cmd: &str) -> Result<Position, Failure> {
        let n = need(self.opts.n, "--n", cmd)?;
        let i = need(self.opts.i, "--i", cmd)?;
        if n > self.opts.max_row {
            return Err(Error::RowLimit {
                requested: n,
                limit: self.opts.max_row,
            }
            .into());
        }
        Ok(Position::new(n, i)?)
    }
}

pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Outcome {
    let opts = &cli.opts;
    let mut ctx = Ctx {
        opts,
        params: UVParams::new(opts.u, opts.v)?,
        root: positive(&opts.root)?,
        out,
    };
    let (u, v) = (opts.u, opts.v);
    match &cli.cmd {
        Cmd::Row => {
            let n = need(opts.n, "--n", "row")?;
            let values = ctx.tree()?.row(n)?;
            let text = values.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let rec = json!({"record": "row", "u": u, "v": v, "root": ctx.root, "n": n, "values": values});
            ctx.emit(rec, &text)?;
        }
        Cmd::Vertex => {
            let pos = ctx.position("vertex")?;
            let value = ctx.tree()?.vertex_at(&pos);
            let rec = json!({
                "record": "vertex", "u": u, "v": v, "root": ctx.root,
                "position": pos, "word": index_to_word(&pos), "value": value,
            });
            ctx.emit(rec, &value.to_string())?;
        }
        Cmd::Successor { value } => {
            let x = positive(value)?;
            let next = successor(&x, ctx.params)?;
            let rec = json!({"record": "successor", "u": u, "v": v, "value": x, "successor": next});
            ctx.emit(rec, &next.to_string())?;
        }
        Cmd::Parent { value } => {
            let x = positive(value)?;
            let (p, side) = match parent(&x, ctx.params) {
                ParentResult::LeftChildOf(p) => (p, "left"),
                ParentResult::RightChildOf(p) => (p, "right"),
                ParentResult::Orphan => {
                    return Err(Error::Orphan {
                        value: x.to_string(),
                        u,
                        v,
                    }
                    .into())
                }
            };
            let rec = json!({"record": "parent", "u": u, "v": v, "value": x, "parent": p, "child": side});
            ctx.emit(rec, &p.to_string())?;
        }
        Cmd::Ancestors { value } => {
            let x = positive(value)?;
            let (_, trace) = orphan_ancestor(&x, ctx.params)?;
            let lines = trace.lines();
            if trace.steps.is_empty() {
                let rec = json!({
                    "record": "ancestor", "u": u, "v": v, "value": x,
                    "cf": trace.query_cf, "undid": null, "orphan": true,
                });
                ctx.emit(rec, &lines[0])?;
            }
            let last = trace.steps.len().saturating_sub(1);
            for (k, step) in trace.steps.iter().enumerate() {
                let rec = json!({
                    "record": "ancestor", "u": u, "v": v, "value": step.value,
                    "cf": step.cf, "undid": step.undid, "orphan": k == last,
                });
                ctx.emit(rec, &lines[k])?;
            }
        }
        Cmd::OrphanRoot { value } => {
            let x = positive(value)?;
            let (root, trace) = orphan_ancestor(&x, ctx.params)?;
            let rec =
                json!({"record": "orphan-root", "u": u, "v": v, "value": x, "root": root, "depth": trace.depth()});
            ctx.emit(rec, &root.to_string())?;
        }
        Cmd::Member { value } => {
            let x = positive(value)?;
            let member = is_descendant(&x, &ctx.root, ctx.params)?;
            let rec = json!({"record": "member", "u": u, "v": v, "root": ctx.root, "value": x, "member": member});
            ctx.emit(rec, &member.to_string())?;
        }
        Cmd::Depth { value } => {
            let x = positive(value)?;
            let depth = depth_of(&x, &ctx.root, ctx.params)?;
            let shown = depth.to_string();
            let number = shown
                .parse::<u64>()
                .map(Value::from)
                .unwrap_or_else(|_| Value::String(shown.clone()));
            let rec = json!({"record": "depth", "u": u, "v": v, "root": ctx.root, "value": x, "depth": number});
            ctx.emit(rec, &shown)?;
        }
        Cmd::Path { value } => {
            let x = positive(value)?;
            let (word, ev) = path_between(&x, &ctx.root, ctx.params)?;
            let op = word.operator_string(&format!("L_{u}"), &format!("R_{v}"));
            let text = format!("word      {word}\noperator  {op}\nexponents {ev}");
            let rec = json!({
                "record": "path", "u": u, "v": v, "root": ctx.root, "value": x,
                "word": word, "operator": op, "exponents": ev, "depth": word.len(),
            });
            ctx.emit(rec, &text)?;
        }
        Cmd::Mirror => {
            let pos = ctx.position("mirror")?;
            let m = position_matrix(&pos, ctx.params);
            let mirrored = pos.mirror();
            let mm = mirror_matrix(&m, ctx.params)?;
            let text = format!("{pos} {m}\n{mirrored} {mm}");
            let rec = json!({
                "record": "mirror", "u": u, "v": v,
                "position": pos, "matrix": m, "mirror": mirrored, "mirror_matrix": mm,
            });
            ctx.emit(rec, &text)?;
        }
        Cmd::Encode { word, code } => {
            let word: PathWord = word.parse()?;
            let (root_code, encoded) = match code {
                Some(c) => {
                    let root: BinaryCode = c.parse()?;
                    let enc = encode_uv_code(&word, &root, ctx.params);
                    (root, enc)
                }
                None => (BinaryCode::root(), BinaryCode::from_word(&word)),
            };
            let rec = json!({"record": "code", "u": u, "v": v, "word": word, "root_code": root_code, "code": encoded});
            ctx.emit(rec, &encoded.to_string())?;
        }
        Cmd::Decode { code } => {
            let code: BinaryCode = code.parse()?;
            let (side, parent_code) = match decode_uv_code(&code, ctx.params) {
                ParentCode::LeftChildOf(p) => (Some("left"), Some(p)),
                ParentCode::RightChildOf(p) => (Some("right"), Some(p)),
                ParentCode::Orphan => (None, None),
            };
            let (root_code, path) = uv_code_root(&code, ctx.params);
            let vertex = Tree::new(Rational::one(), UVParams::classic())?.vertex_at(&code.to_position());
            let parent_text = match (side, &parent_code) {
                (Some(s), Some(p)) => format!("{s} child of {p}"),
                _ => "orphan".to_string(),
            };
            let text = format!("parent {parent_text}\nroot   {root_code} via {path}\nvertex {vertex}");
            let rec = json!({
                "record": "decode", "u": u, "v": v, "code": code,
                "child": side, "parent": parent_code, "root_code": root_code, "path": path, "vertex": vertex,
            });
            ctx.emit(rec, &text)?;
        }
        Cmd::Orphans { bound } => {
            if *bound > MAX_BOUND {
                return Err(Error::BoundLimit {
                    requested: *bound,
                    limit: MAX_BOUND,
                }
                .into());
            }
            let orphans = orphans_in_box(ctx.params, *bound);
            let text = orphans.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let rec = json!({
                "record": "orphans", "u": u, "v": v, "bound": bound, "count": orphans.len(), "orphans": orphans,
            });
            ctx.emit(rec, &text)?;
        }
        Cmd::Verify { suite, bound } => {
            let suites: Vec<Suite> = if suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suite.clone()
            };
            let cfg = SuiteConfig {
                params: ctx.params,
                root: ctx.root.clone(),
                rows: opts.n.unwrap_or(6),
                bound: *bound,
            };
            if cfg.rows > opts.max_row {
                return Err(Error::RowLimit {
                    requested: cfg.rows,
                    limit: opts.max_row,
                }
                .into());
            }
            let mut all = true;
            for s in suites {
                let res = run_suite(s, &cfg)?;
                all &= res.passed;
                let mut text = format!(
                    "{} {} ({},{}) root {}: {} checks",
                    if res.passed { "PASS" } else { "FAIL" },
                    res.suite,
                    u,
                    v,
                    res.root,
                    res.checks
                );
                if let Some(w) = &res.witness {
                    text.push_str(&format!("\n  witness {w}"));
                }
                let mut rec = json!({"record": "suite"});
                if let (Value::Object(m), Ok(Value::Object(fields))) = (&mut rec, serde_json::to_value(&res)) {
                    m.extend(fields);
                }
                ctx.emit(rec, &text)?;
            }
            if !all {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Dot => {
            let depth = opts.depth.unwrap_or(10);
            let dot = ctx.tree()?.to_dot(depth)?;
            let rec = json!({"record": "dot", "u": u, "v": v, "root": ctx.root, "depth": depth, "dot": dot});
            ctx.emit(rec, dot.trim_end())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
