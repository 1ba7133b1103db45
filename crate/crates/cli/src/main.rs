//! `fabf`: command-line access to the fabf library.
//!
//! Exit codes: 0 yes/success, 1 no, 2 undecided, 3 input error.

use std::fs;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use fabf::action::{image_bfs, kernel_basis, ImageResult, IsoConfig, IsoReport, DEFAULT_IMAGE_CAP};
use fabf::brinkmann::{element_period, fabf_brinkmann, philog, BrinkmannConfig, Period, PhiLog, TriState};
use fabf::format::{
    format_hom, format_matrix, format_vector, parse_assignment, parse_element, parse_group, parse_hom,
    parse_matrix_file, parse_vector, parse_word,
};
use fabf::hom::{classify, Hom, HomClassification, RelatorCheck};
use fabf::orbit::{affine_orbit, fixed_space, matrix_orbit, AffineMap, LogSet};
use fabf::{eval_word, Element, EvalMethod, FabfError, Group};

#[derive(Parser)]
#[command(name = "fabf", version, about = "Exact computation in free-abelian-by-free groups", disable_help_flag = true)]
struct Cli {
    /// Emit a JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, action = ArgAction::Help, global = true)]
    help: Option<bool>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct GroupArg {
    /// Group file.
    #[arg(short = 'g', long = "group")]
    group: String,
}

#[derive(Args)]
struct HomArgs {
    /// Source group file.
    #[arg(short = 'g', long = "group")]
    group: String,
    /// Target group file (defaults to the source).
    #[arg(short = 't', long = "target")]
    target: Option<String>,
    /// Homomorphism file.
    #[arg(short = 'h', long = "hom")]
    hom: String,
}

#[derive(Args)]
struct SearchArgs {
    /// Iteration bound for the free-group search.
    #[arg(long, default_value_t = 10_000)]
    bound: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Iterated,
    Block,
}

#[derive(Subcommand)]
enum Verb {
    /// Print an element in normal form.
    Normalize {
        #[command(flatten)]
        g: GroupArg,
        elem: String,
    },
    Mul {
        #[command(flatten)]
        g: GroupArg,
        a: String,
        b: String,
    },
    Inv {
        #[command(flatten)]
        g: GroupArg,
        a: String,
    },
    /// `w⁻¹ a w`.
    Conj {
        #[command(flatten)]
        g: GroupArg,
        a: String,
        w: String,
    },
    Pow {
        #[arg(allow_negative_numbers = true)]
        exponent: i64,
        #[command(flatten)]
        g: GroupArg,
        a: String,
    },
    /// Substitute elements for the letters of a word.
    Eval {
        #[command(flatten)]
        g: GroupArg,
        word: String,
        elems: Vec<String>,
        #[arg(long, value_enum, default_value = "iterated")]
        method: Method,
    },
    /// Verify the conditions of a homomorphism file.
    HomCheck {
        #[command(flatten)]
        h: HomArgs,
    },
    /// Check an assignment of generator images and classify it.
    HomClassify {
        #[arg(short = 'g', long = "group")]
        group: String,
        #[arg(short = 't', long = "target")]
        target: Option<String>,
        /// Assignment file.
        #[arg(short = 'a', long = "assignment")]
        assignment: String,
    },
    HomApply {
        #[command(flatten)]
        h: HomArgs,
        elem: String,
    },
    /// The first homomorphism followed by the second.
    HomCompose {
        #[command(flatten)]
        h: HomArgs,
        /// Second homomorphism file.
        #[arg(long = "then")]
        then: String,
        /// Target group of the second homomorphism (defaults to its source).
        #[arg(long = "final")]
        final_group: Option<String>,
    },
    HomPower {
        power: u64,
        #[command(flatten)]
        h: HomArgs,
    },
    MorphismClass {
        #[command(flatten)]
        h: HomArgs,
    },
    /// Decide whether some power of the endomorphism maps g to the target.
    Brinkmann {
        #[command(flatten)]
        h: HomArgs,
        #[command(flatten)]
        s: SearchArgs,
        elem: String,
        #[arg(value_name = "TARGET")]
        goal: String,
    },
    /// Logarithms of v with base u under the free part of the endomorphism.
    Philog {
        #[command(flatten)]
        h: HomArgs,
        #[command(flatten)]
        s: SearchArgs,
        u: String,
        v: String,
    },
    Period {
        #[command(flatten)]
        h: HomArgs,
        #[command(flatten)]
        s: SearchArgs,
        elem: String,
    },
    /// Decide xQ^k = y.
    Orbit { matrix: String, x: String, y: String },
    /// Decide x·Θ^k = y for Θ: x ↦ xM + b.
    AffineOrbit { matrix: String, b: String, x: String, y: String },
    /// Lattice of vectors r with r A_i^T = r.
    FixedSpace { group: String },
    ActionImage {
        group: String,
        #[arg(long, default_value_t = DEFAULT_IMAGE_CAP)]
        cap: usize,
    },
    ActionKernel {
        group: String,
        #[arg(long, default_value_t = DEFAULT_IMAGE_CAP)]
        cap: usize,
    },
    /// Search for an isomorphism between two groups with finite action.
    IpFinite {
        first: String,
        second: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long = "box", default_value_t = 5)]
        box_bound: u64,
        #[arg(long, default_value_t = DEFAULT_IMAGE_CAP)]
        cap: usize,
    },
}

/// Plain text, JSON mirror and exit code of one answer.
struct Answer {
    text: String,
    json: Value,
    code: u8,
}

impl Answer {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json, code: 0 }
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

type CliResult<T> = Result<T, String>;

fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn ctx<T>(what: &str, r: Result<T, FabfError>) -> CliResult<T> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn load_group(path: &str) -> CliResult<Group> {
    ctx(path, parse_group(&read(path)?))
}

fn elem(g: &Group, s: &str) -> CliResult<Element> {
    ctx(&format!("element \"{s}\""), parse_element(g, s))
}

fn int_json(v: &BigInt) -> Value {
    let s = v.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn elem_answer(e: &Element) -> Answer {
    Answer::ok(
        e.to_string(),
        json!({ "element": e.to_string(), "word": e.free_part().to_string(), "vector": vec_json(e.abelian_part()) }),
    )
}

fn load_hom(h: &HomArgs) -> CliResult<Hom> {
    let source = load_group(&h.group)?;
    let target = match &h.target {
        Some(t) => load_group(t)?,
        None => source.clone(),
    };
    ctx(&h.hom, parse_hom(&read(&h.hom)?, &source, &target))
}

fn verified(hom: Hom) -> CliResult<Hom> {
    let r = match hom {
        Hom::TypeI(h) => h.verified().map(Hom::TypeI),
        Hom::TypeII(h) => h.verified().map(Hom::TypeII),
    };
    r.map_err(|_| "homomorphism conditions fail (see hom-check)".to_string())
}

fn logset_answer(l: LogSet) -> Answer {
    let json = match l {
        LogSet::Empty => json!({ "result": "empty" }),
        LogSet::AP { k0, p } => json!({ "result": "ap", "k0": k0, "p": p }),
    };
    let code = if l.is_empty() { 1 } else { 0 };
    Answer::ok(l.to_string(), json).with_code(code)
}

fn tristate_answer(t: TriState) -> Answer {
    let json = match t {
        TriState::Yes { k, logs } => {
            let period = match logs {
                Some(LogSet::AP { p, .. }) => Value::from(p),
                _ => Value::Null,
            };
            json!({ "result": "yes", "k": k, "period": period })
        }
        TriState::No(c) => json!({ "result": "no", "certificate": c.to_string() }),
        TriState::Undecided { bound } => json!({ "result": "undecided", "bound": bound }),
    };
    Answer { text: t.to_string(), json, code: t.exit_code() as u8 }
}

fn hom_json(h: &Hom) -> Value {
    Value::String(format_hom(h))
}

fn run(verb: Verb) -> CliResult<Answer> {
    Ok(match verb {
        Verb::Normalize { g, elem: e } => elem_answer(&elem(&load_group(&g.group)?, &e)?),
        Verb::Mul { g, a, b } => {
            let grp = load_group(&g.group)?;
            elem_answer(&ctx("mul", elem(&grp, &a)?.mul(&elem(&grp, &b)?))?)
        }
        Verb::Inv { g, a } => elem_answer(&elem(&load_group(&g.group)?, &a)?.inv()),
        Verb::Conj { g, a, w } => {
            let grp = load_group(&g.group)?;
            elem_answer(&ctx("conj", elem(&grp, &a)?.conj(&elem(&grp, &w)?))?)
        }
        Verb::Pow { exponent, g, a } => elem_answer(&elem(&load_group(&g.group)?, &a)?.pow(exponent)),
        Verb::Eval { g, word, elems, method } => {
            let grp = load_group(&g.group)?;
            let w = ctx("word", parse_word(&word))?;
            let gs = elems.iter().map(|s| elem(&grp, s)).collect::<CliResult<Vec<_>>>()?;
            let method = match method {
                Method::Iterated => EvalMethod::Iterated,
                Method::Block => EvalMethod::BlockFormula,
            };
            elem_answer(&ctx("eval", eval_word(&w, &gs, method))?)
        }
        Verb::HomCheck { h } => {
            let hom = load_hom(&h)?;
            let ok = ctx("hom-check", hom.verify())?;
            let text = if ok { "VALID" } else { "INVALID" };
            Answer::ok(text, json!({ "valid": ok })).with_code(if ok { 0 } else { 1 })
        }
        Verb::HomClassify { group, target, assignment } => {
            let source = load_group(&group)?;
            let target = match target {
                Some(t) => load_group(&t)?,
                None => source.clone(),
            };
            let asg = ctx(&assignment, parse_assignment(&read(&assignment)?, &source, &target))?;
            match ctx("hom-classify", classify(&asg))? {
                HomClassification::NotHom(r) => {
                    debug_assert_eq!(asg.check_by_relators().ok(), Some(RelatorCheck::Violated(r)));
                    Answer::ok(format!("NOT-HOM relator={r}"), json!({ "result": "not-hom", "relator": r.to_string() }))
                        .with_code(1)
                }
                HomClassification::TypeI(h) => {
                    let h = Hom::TypeI(h);
                    Answer::ok(
                        format_hom(&h).trim_end().to_string(),
                        json!({ "result": "type-i", "hom": hom_json(&h) }),
                    )
                }
                HomClassification::TypeII(h) => {
                    let h = Hom::TypeII(h);
                    Answer::ok(
                        format_hom(&h).trim_end().to_string(),
                        json!({ "result": "type-ii", "hom": hom_json(&h) }),
                    )
                }
            }
        }
        Verb::HomApply { h, elem: e } => {
            let hom = load_hom(&h)?;
            let hom = verified(hom)?;
            let x = elem(hom.source(), &e)?;
            elem_answer(&ctx("hom-apply", hom.apply(&x))?)
        }
        Verb::HomCompose { h, then, final_group } => {
            let hom = load_hom(&h)?;
            let first = verified(hom)?;
            let mid = first.target().clone();
            let last = match final_group {
                Some(f) => load_group(&f)?,
                None => mid.clone(),
            };
            let second = verified(ctx(&then, parse_hom(&read(&then)?, &mid, &last))?)?;
            let (Hom::TypeI(a), Hom::TypeI(b)) = (&first, &second) else {
                return Err("composition is implemented for type I homomorphisms".into());
            };
            let c = Hom::TypeI(ctx("hom-compose", a.compose(b))?);
            Answer::ok(format_hom(&c).trim_end().to_string(), json!({ "hom": hom_json(&c) }))
        }
        Verb::HomPower { power, h } => {
            let hom = load_hom(&h)?;
            let Hom::TypeI(t) = verified(hom)? else {
                return Err("powers are implemented for type I endomorphisms".into());
            };
            let p = Hom::TypeI(ctx("hom-power", t.power(power))?);
            Answer::ok(format_hom(&p).trim_end().to_string(), json!({ "hom": hom_json(&p) }))
        }
        Verb::MorphismClass { h } => {
            let hom = load_hom(&h)?;
            let c = ctx("morphism-class", verified(hom)?.morphism_class())?;
            let yn = |b: bool| if b { "yes" } else { "no" };
            Answer::ok(
                format!("mono={} epi={} auto={}", yn(c.mono), yn(c.epi), yn(c.auto)),
                json!({ "mono": c.mono, "epi": c.epi, "auto": c.auto }),
            )
        }
        Verb::Brinkmann { h, s, elem: e, goal } => {
            let hom = load_hom(&h)?;
            let hom = verified(hom)?;
            let (x, y) = (elem(hom.source(), &e)?, elem(hom.source(), &goal)?);
            tristate_answer(ctx("brinkmann", fabf_brinkmann(&hom, &x, &y, &BrinkmannConfig::with_bound(s.bound)))?)
        }
        Verb::Philog { h, s, u, v } => {
            let hom = load_hom(&h)?;
            let Hom::TypeI(t) = verified(hom)? else {
                return Err("φ-logarithms need a type I endomorphism".into());
            };
            let (u, v) = (ctx("word", parse_word(&u))?, ctx("word", parse_word(&v))?);
            match ctx("philog", philog(&u, t.phi(), &v, &BrinkmannConfig::with_bound(s.bound)))? {
                PhiLog::Known(l) => logset_answer(l),
                PhiLog::Undecided { bound } => {
                    Answer::ok(format!("UNDECIDED bound={bound}"), json!({ "result": "undecided", "bound": bound }))
                        .with_code(2)
                }
            }
        }
        Verb::Period { h, s, elem: e } => {
            let hom = load_hom(&h)?;
            let Hom::TypeI(t) = verified(hom)? else {
                return Err("periods are implemented for type I endomorphisms".into());
            };
            let x = elem(t.source(), &e)?;
            match ctx("period", element_period(&t, &x, &BrinkmannConfig::with_bound(s.bound)))? {
                Period::Known(p) => Answer::ok(format!("PERIOD {p}"), json!({ "result": "period", "period": p })),
                Period::Undecided { bound } => {
                    Answer::ok(format!("UNDECIDED bound={bound}"), json!({ "result": "undecided", "bound": bound }))
                        .with_code(2)
                }
            }
        }
        Verb::Orbit { matrix, x, y } => {
            let q = ctx(&matrix, parse_matrix_file(&read(&matrix)?))?;
            let (x, y) = (ctx("x", parse_vector(&x))?, ctx("y", parse_vector(&y))?);
            logset_answer(ctx("orbit", matrix_orbit(&x, &q, &y))?)
        }
        Verb::AffineOrbit { matrix, b, x, y } => {
            let m = ctx(&matrix, parse_matrix_file(&read(&matrix)?))?;
            let theta = ctx("affine map", AffineMap::new(m, ctx("b", parse_vector(&b))?))?;
            let (x, y) = (ctx("x", parse_vector(&x))?, ctx("y", parse_vector(&y))?);
            logset_answer(ctx("affine-orbit", affine_orbit(&x, &theta, &y))?)
        }
        Verb::FixedSpace { group } => {
            let g = load_group(&group)?;
            let basis = ctx("fixed-space", fixed_space(g.action()))?;
            let rows: Vec<String> = basis.row_vecs().iter().map(|r| format_vector(r)).collect();
            let text = if rows.is_empty() {
                "rank 0".to_string()
            } else {
                format!("rank {}\n{}", rows.len(), rows.join("\n"))
            };
            Answer::ok(
                text,
                json!({ "rank": rows.len(), "basis": basis.row_vecs().iter().map(|r| vec_json(r)).collect::<Vec<_>>() }),
            )
        }
        Verb::ActionImage { group, cap } => match image_bfs(&load_group(&group)?, cap) {
            ImageResult::Finite(img) => {
                let mut text = format!("order {}", img.order());
                for (rep, m) in img.reps().iter().zip(img.elements()) {
                    text.push_str(&format!("\n{rep}: {}", format_matrix(m)));
                }
                let elements: Vec<Value> = img
                    .reps()
                    .iter()
                    .zip(img.elements())
                    .map(|(r, m)| json!({ "word": r.to_string(), "matrix": format_matrix(m) }))
                    .collect();
                Answer::ok(text, json!({ "result": "finite", "order": img.order(), "elements": elements }))
            }
            ImageResult::NotFiniteWithinCap { cap } => Answer::ok(
                format!("NOT-FINITE-WITHIN-CAP cap={cap}"),
                json!({ "result": "not-finite-within-cap", "cap": cap }),
            )
            .with_code(2),
        },
        Verb::ActionKernel { group, cap } => {
            let g = load_group(&group)?;
            if let ImageResult::NotFiniteWithinCap { cap } = image_bfs(&g, cap) {
                return Ok(Answer::ok(
                    format!("NOT-FINITE-WITHIN-CAP cap={cap}"),
                    json!({ "result": "not-finite-within-cap", "cap": cap }),
                )
                .with_code(2));
            }
            let basis = ctx("action-kernel", kernel_basis(&g, cap))?;
            let words: Vec<String> = basis.iter().map(ToString::to_string).collect();
            Answer::ok(
                format!("rank {}\n{}", words.len(), words.join("\n")),
                json!({ "rank": words.len(), "basis": words }),
            )
        }
        Verb::IpFinite { first, second, depth, box_bound, cap } => {
            let (a, b) = (load_group(&first)?, load_group(&second)?);
            let cfg = IsoConfig { depth, box_bound, image_cap: cap, ..IsoConfig::default() };
            let report = ctx("ip-finite", fabf::action::ip_finite(&a, &b, &cfg))?;
            let code = report.exit_code() as u8;
            let (text, json) = match &report {
                IsoReport::Yes { hom } => {
                    let h = Hom::TypeI(hom.clone());
                    (format!("YES\n{}", format_hom(&h).trim_end()), json!({ "result": "yes", "hom": hom_json(&h) }))
                }
                IsoReport::No { reason } => (report.to_string(), json!({ "result": "no", "reason": reason })),
                IsoReport::Undecided { depth, box_bound } => {
                    (report.to_string(), json!({ "result": "undecided", "depth": depth, "box": box_bound }))
                }
            };
            Answer { text, json, code }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.verb) {
        Ok(a) => {
            if cli.json {
                println!("{}", a.json);
            } else {
                println!("{}", a.text);
            }
            ExitCode::from(a.code)
        }
        Err(msg) => {
            if cli.json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
