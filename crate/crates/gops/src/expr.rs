//! Element expressions: literals for every value kind plus composable
//! operations, with arity and family checking before evaluation.
//!
//! Literals: `perm[2,1,3]`, `cyc(1 2)(3)`, `braid(3): s1 s2^-1`,
//! `ribbon(2): s1 | t=(1,0)`, `zmod(2)^3: (1,0,1)`, `triv(3)`,
//! `bar(S,3)[perm[2,1,3], e]`, `mel(B,2 @lvl1)[e | s1 s1 ; x y]` and
//! angle-bracket words of monad elements.
//!
//! Calls: `prod(a, b)`, `inv(a)`, `gamma(outer; b1, b2, ...)`,
//! `cable(outer; b1, ...)`, `face(a, i)`, `deg(a, i)`, `pi(a)`, `nf(a)`,
//! `uembed(m)`, `uprod(w, w)`, `uinv(w)`, `upi(w)`. Faces and
//! degeneracies are 1-based on family elements and 0-based on bar
//! simplices and monad elements.

use std::fmt;

use group_operads::bar::BarSimplex;
use group_operads::monad::{
    kernel_membership, parse_monad_element, u_embed, u_pi, FreeWord, MonadElement,
    PointedAlphabet,
};
use group_operads::operad::{Element, Family};
use group_operads::{BraidWord, Permutation};

#[derive(Debug, Clone)]
pub struct ExprError {
    pub message: String,
    /// byte offset into the original input, when known
    pub offset: Option<usize>,
}

impl ExprError {
    fn new(message: impl Into<String>) -> Self {
        ExprError { message: message.into(), offset: None }
    }

    fn at(message: impl Into<String>, offset: usize) -> Self {
        ExprError { message: message.into(), offset: Some(offset) }
    }

    /// Renders with a line/column computed against the source text.
    pub fn render(&self, source: &str) -> String {
        match self.offset {
            Some(off) => {
                let upto = &source[..off.min(source.len())];
                let line = upto.lines().count().max(1);
                let col = upto.lines().last().map(|l| l.len()).unwrap_or(0) + 1;
                format!("{} at line {line}, column {col}", self.message)
            }
            None => self.message.clone(),
        }
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// An evaluated expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    El { family: Family, elem: Element },
    Bar(BarSimplex),
    Mel(MonadElement),
    Word(FreeWord),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::El { elem, .. } => write!(f, "{elem}"),
            Value::Bar(s) => write!(f, "{s}"),
            Value::Mel(m) => write!(f, "{m}"),
            Value::Word(w) => write!(f, "{w}"),
        }
    }
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::El { .. } => "element",
            Value::Bar(_) => "bar simplex",
            Value::Mel(_) => "monad element",
            Value::Word(_) => "free word",
        }
    }
}

pub struct Context {
    pub alphabet: PointedAlphabet,
}

impl Default for Context {
    fn default() -> Self {
        Context { alphabet: PointedAlphabet::with_base("xyz").expect("distinct letters") }
    }
}

/// Splits at top-level occurrences of `sep`, respecting (), [] and angle
/// brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '\u{27e8}' => depth += 1,
            ')' | ']' | '\u{27e9}' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            parts.push(&s[start..i]);
            start = i + c.len_utf8();
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parses and evaluates an expression.
pub fn eval(ctx: &Context, source: &str) -> Result<Value, ExprError> {
    eval_at(ctx, source, 0, "expr")
}

/// Multiplies two evaluated values of the same kind.
pub fn eval_product(a: Value, b: Value) -> Result<Value, ExprError> {
    apply_prod(a, b, "compose")
}

fn eval_at(ctx: &Context, source: &str, base: usize, path: &str) -> Result<Value, ExprError> {
    let trimmed = source.trim_start();
    let offset = base + (source.len() - trimmed.len());
    let s = trimmed.trim_end();
    if s.is_empty() {
        return Err(ExprError::at(format!("{path}: empty expression"), offset));
    }

    // calls: ident '(' ... ')'
    if let Some(open) = s.find('(') {
        let head = &s[..open];
        if head.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && is_call_head(head) {
            if !s.ends_with(')') {
                return Err(ExprError::at(
                    format!("{path}: missing closing ')' for {head}"),
                    offset + s.len(),
                ));
            }
            let inner = &s[open + 1..s.len() - 1];
            return eval_call(ctx, head, inner, offset + open + 1, path);
        }
    }

    parse_literal(ctx, s, offset, path)
}

fn is_call_head(head: &str) -> bool {
    matches!(
        head,
        "prod" | "inv" | "gamma" | "cable" | "face" | "deg" | "pi" | "nf" | "uembed" | "uprod"
            | "uinv" | "upi" | "kernel"
    )
}

fn eval_call(
    ctx: &Context,
    head: &str,
    inner: &str,
    inner_off: usize,
    path: &str,
) -> Result<Value, ExprError> {
    let sub = |i: usize| format!("{path}.{head}[{i}]");
    match head {
        "gamma" | "cable" => {
            let halves = split_top(inner, ';');
            if halves.len() != 2 {
                return Err(ExprError::at(
                    format!("{path}: {head} needs 'outer; inner, inner, ...'"),
                    inner_off,
                ));
            }
            let outer = eval_at(ctx, halves[0], inner_off, &sub(0))?;
            let mut inners = Vec::new();
            let mut off = inner_off + halves[0].len() + 1;
            let args = split_top(halves[1], ',');
            for (i, a) in args.iter().enumerate() {
                if a.trim().is_empty() && args.len() == 1 {
                    break; // zero inner arguments
                }
                inners.push(eval_at(ctx, a, off, &sub(i + 1))?);
                off += a.len() + 1;
            }
            apply_gamma(head, outer, inners, path)
        }
        "prod" | "uprod" => {
            let (a, b) = two_args(ctx, inner, inner_off, path, head)?;
            apply_prod(a, b, path)
        }
        "inv" | "uinv" => {
            let v = one_arg(ctx, inner, inner_off, path, head)?;
            apply_inv(v, path)
        }
        "face" | "deg" => {
            let args = split_top(inner, ',');
            if args.len() != 2 {
                return Err(ExprError::at(
                    format!("{path}: {head} needs (value, index)"),
                    inner_off,
                ));
            }
            let v = eval_at(ctx, args[0], inner_off, &sub(0))?;
            let idx: usize = args[1].trim().parse().map_err(|_| {
                ExprError::at(
                    format!("{path}: {head} index must be a nonnegative integer"),
                    inner_off + args[0].len() + 1,
                )
            })?;
            apply_face_deg(head, v, idx, path)
        }
        "pi" => {
            let v = one_arg(ctx, inner, inner_off, path, head)?;
            apply_pi(v, path)
        }
        "nf" => {
            let v = one_arg(ctx, inner, inner_off, path, head)?;
            Ok(apply_nf(v))
        }
        "uembed" => {
            let v = one_arg(ctx, inner, inner_off, path, head)?;
            match v {
                Value::Mel(m) => u_embed(&m)
                    .map(Value::Word)
                    .map_err(|e| ExprError::new(format!("{path}: {e}"))),
                other => Err(ExprError::new(format!(
                    "{path}: uembed expects a monad element, got {}",
                    other.kind()
                ))),
            }
        }
        "upi" => {
            let v = one_arg(ctx, inner, inner_off, path, head)?;
            let w = match v {
                Value::Word(w) => w,
                Value::Mel(m) => {
                    u_embed(&m).map_err(|e| ExprError::new(format!("{path}: {e}")))?
                }
                other => {
                    return Err(ExprError::new(format!(
                        "{path}: upi expects a free word or monad element, got {}",
                        other.kind()
                    )))
                }
            };
            u_pi(&w)
                .map(Value::Word)
                .map_err(|e| ExprError::new(format!("{path}: {e}")))
        }
        "kernel" => {
            let v = one_arg(ctx, inner, inner_off, path, head)?;
            let w = match v {
                Value::Word(w) => w,
                Value::Mel(m) => {
                    u_embed(&m).map_err(|e| ExprError::new(format!("{path}: {e}")))?
                }
                other => {
                    return Err(ExprError::new(format!(
                        "{path}: kernel expects a free word, got {}",
                        other.kind()
                    )))
                }
            };
            // a boolean masquerading as a word: empty means yes
            let member =
                kernel_membership(&w).map_err(|e| ExprError::new(format!("{path}: {e}")))?;
            if member {
                Ok(Value::Word(FreeWord::empty()))
            } else {
                Ok(Value::Word(w))
            }
        }
        _ => Err(ExprError::at(format!("{path}: unknown operation {head:?}"), inner_off)),
    }
}

fn one_arg(
    ctx: &Context,
    inner: &str,
    off: usize,
    path: &str,
    head: &str,
) -> Result<Value, ExprError> {
    let args = split_top(inner, ',');
    if args.len() != 1 {
        return Err(ExprError::at(format!("{path}: {head} takes one argument"), off));
    }
    eval_at(ctx, args[0], off, &format!("{path}.{head}[0]"))
}

fn two_args(
    ctx: &Context,
    inner: &str,
    off: usize,
    path: &str,
    head: &str,
) -> Result<(Value, Value), ExprError> {
    let args = split_top(inner, ',');
    if args.len() != 2 {
        return Err(ExprError::at(format!("{path}: {head} takes two arguments"), off));
    }
    let a = eval_at(ctx, args[0], off, &format!("{path}.{head}[0]"))?;
    let b = eval_at(ctx, args[1], off + args[0].len() + 1, &format!("{path}.{head}[1]"))?;
    Ok((a, b))
}

fn apply_gamma(
    head: &str,
    outer: Value,
    inners: Vec<Value>,
    path: &str,
) -> Result<Value, ExprError> {
    match outer {
        Value::El { family, elem } => {
            if head == "cable" && !matches!(family, Family::Braid | Family::PureBraid) {
                return Err(ExprError::new(format!(
                    "{path}: cable works on braids; use gamma for family {}",
                    family.tag()
                )));
            }
            let mut elems = Vec::with_capacity(inners.len());
            for (i, v) in inners.into_iter().enumerate() {
                match v {
                    Value::El { family: f2, elem: e2 } => {
                        if f2 != family {
                            return Err(ExprError::new(format!(
                                "{path}: inner argument {i} has family {}, expected {}",
                                f2.tag(),
                                family.tag()
                            )));
                        }
                        elems.push(e2);
                    }
                    other => {
                        return Err(ExprError::new(format!(
                            "{path}: inner argument {i} is a {}, expected an element",
                            other.kind()
                        )))
                    }
                }
            }
            let out = family
                .gamma(&elem, &elems)
                .map_err(|e| ExprError::new(format!("{path}: {e}")))?;
            Ok(Value::El { family, elem: out })
        }
        Value::Bar(outer) => {
            let mut simplices = Vec::with_capacity(inners.len());
            for (i, v) in inners.into_iter().enumerate() {
                match v {
                    Value::Bar(s) if s.family == outer.family => simplices.push(s),
                    Value::Bar(s) => {
                        return Err(ExprError::new(format!(
                            "{path}: inner simplex {i} has family {}, expected {}",
                            s.family.tag(),
                            outer.family.tag()
                        )))
                    }
                    other => {
                        return Err(ExprError::new(format!(
                            "{path}: inner argument {i} is a {}, expected a bar simplex",
                            other.kind()
                        )))
                    }
                }
            }
            outer
                .gamma(&simplices)
                .map(Value::Bar)
                .map_err(|e| ExprError::new(format!("{path}: {e}")))
        }
        other => Err(ExprError::new(format!(
            "{path}: gamma expects an element or bar simplex outer, got {}",
            other.kind()
        ))),
    }
}

fn apply_prod(a: Value, b: Value, path: &str) -> Result<Value, ExprError> {
    match (a, b) {
        (Value::El { family: fa, elem: ea }, Value::El { family: fb, elem: eb }) => {
            if fa != fb {
                return Err(ExprError::new(format!(
                    "{path}: cannot multiply family {} by family {}",
                    fa.tag(),
                    fb.tag()
                )));
            }
            let out = fa
                .multiply(&ea, &eb)
                .map_err(|e| ExprError::new(format!("{path}: {e}")))?;
            Ok(Value::El { family: fa, elem: out })
        }
        (Value::Mel(a), Value::Mel(b)) => a
            .product(&b)
            .map(Value::Mel)
            .map_err(|e| ExprError::new(format!("{path}: {e}"))),
        (Value::Word(a), Value::Word(b)) => Ok(Value::Word(a.product(&b))),
        (a, b) => Err(ExprError::new(format!(
            "{path}: cannot multiply a {} by a {}",
            a.kind(),
            b.kind()
        ))),
    }
}

fn apply_inv(v: Value, path: &str) -> Result<Value, ExprError> {
    match v {
        Value::El { family, elem } => {
            let out = family.inverse(&elem);
            Ok(Value::El { family, elem: out })
        }
        Value::Word(w) => Ok(Value::Word(w.inverse())),
        other => Err(ExprError::new(format!(
            "{path}: no inverse for a {} (the monoid embeds via uembed)",
            other.kind()
        ))),
    }
}

fn apply_face_deg(head: &str, v: Value, idx: usize, path: &str) -> Result<Value, ExprError> {
    let err = |e: String| ExprError::new(format!("{path}: {e}"));
    match v {
        Value::El { family, elem } => {
            let out = if head == "face" {
                family.face(&elem, idx)
            } else {
                family.degeneracy(&elem, idx)
            }
            .map_err(|e| err(e.to_string()))?;
            Ok(Value::El { family, elem: out })
        }
        Value::Bar(s) => {
            let out = if head == "face" { s.face(idx) } else { s.degeneracy(idx) }
                .map_err(|e| err(e.to_string()))?;
            Ok(Value::Bar(out))
        }
        Value::Mel(m) => {
            let out = if head == "face" { m.face(idx) } else { m.degeneracy(idx) }
                .map_err(|e| err(e.to_string()))?;
            Ok(Value::Mel(out))
        }
        other => Err(err(format!("{head} does not apply to a {}", other.kind()))),
    }
}

fn apply_pi(v: Value, path: &str) -> Result<Value, ExprError> {
    match v {
        Value::El { family, elem } => Ok(Value::El {
            family: Family::Symmetric,
            elem: Element::Perm(family.to_permutation(&elem)),
        }),
        Value::Bar(s) => {
            let entries = s
                .entries
                .iter()
                .map(|e| Element::Perm(s.family.to_permutation(e)))
                .collect();
            BarSimplex::new(Family::Symmetric, entries)
                .map(Value::Bar)
                .map_err(|e| ExprError::new(format!("{path}: {e}")))
        }
        Value::Mel(m) => Ok(Value::Mel(m.project())),
        Value::Word(w) => u_pi(&w)
            .map(Value::Word)
            .map_err(|e| ExprError::new(format!("{path}: {e}"))),
    }
}

fn apply_nf(v: Value) -> Value {
    match v {
        Value::El { family, elem } => {
            let elem = family.canonical(&elem);
            Value::El { family, elem }
        }
        other => other,
    }
}

fn parse_literal(ctx: &Context, s: &str, offset: usize, path: &str) -> Result<Value, ExprError> {
    let fail = |e: String| ExprError::at(format!("{path}: {e}"), offset);
    if s.starts_with("perm[") || s.starts_with("cyc") {
        let p: Permutation = s.parse().map_err(|e| fail(format!("{e}")))?;
        return Ok(Value::El { family: Family::Symmetric, elem: Element::Perm(p) });
    }
    if s.starts_with("braid(") {
        let b: BraidWord = s.parse().map_err(|e| fail(format!("{e}")))?;
        return Ok(Value::El { family: Family::Braid, elem: Element::Braid(b) });
    }
    if s.starts_with("ribbon(") {
        let r: group_operads::families::RibbonElement =
            s.parse().map_err(|e| fail(format!("{e}")))?;
        return Ok(Value::El { family: Family::Ribbon, elem: Element::Ribbon(r) });
    }
    if s.starts_with("zmod(") {
        let a: group_operads::families::AbelianPowerElement =
            s.parse().map_err(|e| fail(format!("{e}")))?;
        let family = Family::AbelianPower { modulus: a.modulus };
        return Ok(Value::El { family, elem: Element::Abelian(a) });
    }
    if let Some(body) = s.strip_prefix("triv(").and_then(|r| r.strip_suffix(')')) {
        let n: usize = body
            .trim()
            .parse()
            .map_err(|_| fail(format!("bad arity {body:?}")))?;
        return Ok(Value::El { family: Family::Trivial, elem: Element::Trivial(n) });
    }
    if s.starts_with("bar(") {
        return parse_bar(s, offset, path);
    }
    if s.starts_with("mel(") {
        let m = parse_monad_element(s, &ctx.alphabet).map_err(|e| fail(format!("{e}")))?;
        return Ok(Value::Mel(m));
    }
    if s.starts_with('\u{27e8}') || s == "1" || s == "e" {
        return parse_word(ctx, s, offset, path);
    }
    Err(fail(format!("unrecognized expression {s:?}")))
}

fn parse_bar(s: &str, offset: usize, path: &str) -> Result<Value, ExprError> {
    let fail = |e: String| ExprError::at(format!("{path}: {e}"), offset);
    let rest = s.strip_prefix("bar(").expect("checked");
    let close = rest.find(')').ok_or_else(|| fail("missing ')' in bar header".into()))?;
    let header = &rest[..close];
    let (tag, arity_str) = header
        .split_once(',')
        .ok_or_else(|| fail("bar header needs family,arity".into()))?;
    let family =
        Family::from_tag(tag.trim()).ok_or_else(|| fail(format!("unknown family {tag:?}")))?;
    let arity: usize = arity_str
        .trim()
        .parse()
        .map_err(|_| fail(format!("bad arity {arity_str:?}")))?;
    let body = rest[close + 1..]
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| fail("bar needs [entries]".into()))?;
    let mut entries = Vec::new();
    for tok in split_top(body, ',') {
        let tok = tok.trim();
        // accept full literals and compact entry forms
        let elem = match family {
            Family::Symmetric if tok.starts_with("perm[") || tok.starts_with("cyc") => {
                let p: Permutation = tok.parse().map_err(|e| fail(format!("{e}")))?;
                Element::Perm(p)
            }
            Family::Braid | Family::PureBraid if tok.starts_with("braid(") => {
                let b: BraidWord = tok.parse().map_err(|e| fail(format!("{e}")))?;
                Element::Braid(b)
            }
            _ => group_operads::monad::entry_from_compact(&family, arity, tok)
                .map_err(|e| fail(format!("{e}")))?,
        };
        if elem.arity() != arity {
            return Err(fail(format!("entry arity {} differs from {arity}", elem.arity())));
        }
        entries.push(elem);
    }
    BarSimplex::new(family, entries)
        .map(Value::Bar)
        .map_err(|e| fail(format!("{e}")))
}

fn parse_word(ctx: &Context, s: &str, offset: usize, path: &str) -> Result<Value, ExprError> {
    let fail = |e: String| ExprError::at(format!("{path}: {e}"), offset);
    if s == "1" || s == "e" {
        return Ok(Value::Word(FreeWord::empty()));
    }
    let mut word = FreeWord::empty();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('\u{27e8}')
            .ok_or_else(|| fail(format!("expected angle-bracket factor in {rest:?}")))?;
        let end = body
            .find('\u{27e9}')
            .ok_or_else(|| fail("unclosed angle bracket".into()))?;
        let mel = parse_monad_element(&body[..end], &ctx.alphabet)
            .map_err(|e| fail(format!("{e}")))?;
        rest = body[end + '\u{27e9}'.len_utf8()..].trim_start();
        let exp = if let Some(r) = rest.strip_prefix("^-1") {
            rest = r.trim_start();
            -1
        } else {
            1
        };
        let single = u_embed(&mel).map_err(|e| fail(format!("{e}")))?;
        // a factor literal must be one irreducible, not a product
        if single.len() != 1 {
            return Err(fail(format!(
                "word factor must be irreducible; {mel} has {} factors",
                single.len()
            )));
        }
        let w = if exp < 0 { single.inverse() } else { single };
        word = word.product(&w);
    }
    Ok(Value::Word(word))
}
