//! Declarative claim files: a ring declaration, named ideal bindings built
//! from an expression language over the kernel's operations, and assertions
//! checked mechanically. One file can carry several claims; each claim cites
//! the locus it replays.
//!
//! Grammar (line oriented, `#` comments):
//!
//! ```text
//! ring char=32003 vars=[x,y,a,b,c] order=grevlex
//! claim intro-pd5 : Section 1 example
//! let I = ideal(x^3, y^3, x^2*a + x*y*b + y^2*c)
//! let L = colon(I, ideal(x, y, a, b, c))
//! assert x^2*y^2 in L
//! assert x^2*y^2 not in I
//! assert pd(I) == 5
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use trefoil_core::{
    link, parse, CompleteIntersectionWitness, Error, FieldSpec, Ideal, MonomialOrder, PolyRing,
    Polynomial,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub characteristic: u32,
    pub vars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimFile {
    pub ring: RingDecl,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub locus: String,
    pub bindings: Vec<(String, Expr)>,
    pub assertions: Vec<Assertion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A bound name.
    Name(String),
    /// Raw polynomial text, parsed against the effective ring at run time
    /// (so a characteristic override re-reads coefficients correctly).
    Poly(String),
    Int(i64),
    Call { func: String, args: Vec<Expr> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assertion {
    PdEq { name: String, value: usize },
    PdLe { name: String, value: usize },
    IdealEq { name: String, expr: Expr },
    Member { poly: String, name: String },
    NotMember { poly: String, name: String },
    MultEq { name: String, value: i64 },
    HtEq { name: String, value: usize },
    HilbertEq { left: String, right: String },
    IsCm { name: String },
}

#[derive(Debug, Clone)]
pub struct AssertionOutcome {
    pub index: usize,
    pub text: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: String,
    pub locus: String,
    pub outcomes: Vec<AssertionOutcome>,
    /// Euler-characteristic consistency failures over the bound ideals,
    /// collected when the runner asks for the homological cross-check.
    pub euler_failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass) && self.euler_failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Characteristic override; None keeps each file's declaration.
    pub characteristic: Option<u32>,
    /// Run the Betti/Hilbert Euler cross-check on every bound ideal.
    pub check_euler: bool,
    /// Base seed mixed into each claim's witness searches.
    pub seed: u64,
    /// Only run claims whose id contains this substring.
    pub filter: Option<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            characteristic: None,
            check_euler: false,
            seed: 0,
            filter: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col: 1,
        msg: msg.into(),
    }
}

/// Parses a claim file and type-checks every expression against the declared
/// ring (variables must exist; syntax must be well formed).
pub fn parse_claims(text: &str) -> Result<ClaimFile, Error> {
    let mut ring: Option<RingDecl> = None;
    let mut claims: Vec<Claim> = Vec::new();
    let mut current: Option<Claim> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ring ") {
            if ring.is_some() {
                return Err(parse_err(lineno, "duplicate ring declaration"));
            }
            ring = Some(parse_ring_decl(rest, lineno)?);
        } else if let Some(rest) = line.strip_prefix("claim ") {
            if ring.is_none() {
                return Err(parse_err(lineno, "claim before ring declaration"));
            }
            if let Some(done) = current.take() {
                claims.push(done);
            }
            let (id, locus) = match rest.split_once(':') {
                Some((id, locus)) => (id.trim().to_string(), locus.trim().to_string()),
                None => (rest.trim().to_string(), String::new()),
            };
            if id.is_empty() || id.contains(char::is_whitespace) {
                return Err(parse_err(lineno, format!("bad claim id {id:?}")));
            }
            if claims.iter().any(|c| c.id == id) {
                return Err(parse_err(lineno, format!("duplicate claim id {id:?}")));
            }
            current = Some(Claim {
                id,
                locus,
                bindings: Vec::new(),
                assertions: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("let ") {
            let claim = current
                .as_mut()
                .ok_or_else(|| parse_err(lineno, "binding outside a claim"))?;
            let (name, expr_text) = rest
                .split_once('=')
                .ok_or_else(|| parse_err(lineno, "expected `let NAME = <expr>`"))?;
            let name = name.trim().to_string();
            if !is_ident(&name) {
                return Err(parse_err(lineno, format!("bad binding name {name:?}")));
            }
            if claim.bindings.iter().any(|(n, _)| *n == name) {
                return Err(parse_err(lineno, format!("duplicate binding {name:?}")));
            }
            let expr = parse_expr(expr_text.trim(), lineno)?;
            claim.bindings.push((name, expr));
        } else if let Some(rest) = line.strip_prefix("assert ") {
            let claim = current
                .as_mut()
                .ok_or_else(|| parse_err(lineno, "assertion outside a claim"))?;
            let assertion = parse_assertion(rest.trim(), lineno)?;
            claim.assertions.push(assertion);
        } else {
            return Err(parse_err(lineno, format!("unrecognized line: {line}")));
        }
    }
    if let Some(done) = current.take() {
        claims.push(done);
    }
    let ring = ring.ok_or_else(|| parse_err(1, "missing ring declaration"))?;

    let file = ClaimFile { ring, claims };
    typecheck(&file)?;
    Ok(file)
}

fn parse_ring_decl(rest: &str, lineno: usize) -> Result<RingDecl, Error> {
    let mut characteristic: Option<u32> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order_seen = false;
    for item in rest.split_whitespace() {
        if let Some(v) = item.strip_prefix("char=") {
            characteristic = Some(
                v.parse()
                    .map_err(|_| parse_err(lineno, format!("bad characteristic {v:?}")))?,
            );
        } else if let Some(v) = item.strip_prefix("vars=") {
            let v = v
                .strip_prefix('[')
                .and_then(|v| v.strip_suffix(']'))
                .ok_or_else(|| parse_err(lineno, "vars must look like vars=[x,y,z]"))?;
            vars = Some(v.split(',').map(|s| s.trim().to_string()).collect());
        } else if let Some(v) = item.strip_prefix("order=") {
            if v != "grevlex" {
                return Err(parse_err(lineno, format!("unsupported order {v:?}")));
            }
            order_seen = true;
        } else {
            return Err(parse_err(lineno, format!("bad ring item {item:?}")));
        }
    }
    if !order_seen {
        return Err(parse_err(lineno, "ring declaration needs order=grevlex"));
    }
    Ok(RingDecl {
        characteristic: characteristic
            .ok_or_else(|| parse_err(lineno, "ring declaration needs char=<n>"))?,
        vars: vars.ok_or_else(|| parse_err(lineno, "ring declaration needs vars=[...]"))?,
    })
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().unwrap().is_alphabetic()
        && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

pub const FUNCTIONS: &[&str] = &[
    "ideal",
    "sum",
    "product",
    "power",
    "intersect",
    "colon",
    "saturate",
    "eliminate",
    "degree_part",
    "link",
    "unmixed",
];

/// Splits `text` at top-level commas (depth-0 with respect to parentheses).
fn split_args(text: &str, lineno: usize) -> Result<Vec<&str>, Error> {
    let mut depth = 0usize;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| parse_err(lineno, "unbalanced parentheses"))?
            }
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(parse_err(lineno, "unbalanced parentheses"));
    }
    parts.push(text[start..].trim());
    Ok(parts)
}

fn parse_expr(text: &str, lineno: usize) -> Result<Expr, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Err(parse_err(lineno, "empty expression"));
    }
    // Function call?
    if let Some(open) = text.find('(') {
        let head = text[..open].trim();
        if FUNCTIONS.contains(&head) && text.ends_with(')') && balanced_to_end(text, open) {
            let inner = &text[open + 1..text.len() - 1];
            let args = split_args(inner, lineno)?
                .into_iter()
                .map(|a| parse_expr(a, lineno))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Expr::Call {
                func: head.to_string(),
                args,
            });
        }
    }
    if let Ok(n) = text.parse::<i64>() {
        return Ok(Expr::Int(n));
    }
    if is_ident(text) {
        // A bound name or a single-variable polynomial; resolved against the
        // environment at evaluation time.
        return Ok(Expr::Name(text.to_string()));
    }
    Ok(Expr::Poly(text.to_string()))
}

/// True when the parenthesis opened at `open` closes exactly at the end of
/// the text, i.e. the string is one function application and not something
/// like `f(x)*g(y)`.
fn balanced_to_end(text: &str, open: usize) -> bool {
    let mut depth = 0usize;
    for (i, c) in text.char_indices().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == text.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

fn parse_assertion(rest: &str, lineno: usize) -> Result<Assertion, Error> {
    for prefix in ["pd(", "mult(", "ht("] {
        if let Some(tail) = rest.strip_prefix(prefix) {
            let close = tail
                .find(')')
                .ok_or_else(|| parse_err(lineno, "missing ')'"))?;
            let name = tail[..close].trim().to_string();
            let after = tail[close + 1..].trim();
            if let Some(v) = after.strip_prefix("==") {
                let v = v.trim();
                return match prefix {
                    "pd(" => Ok(Assertion::PdEq {
                        name,
                        value: v.parse().map_err(|_| parse_err(lineno, "bad integer"))?,
                    }),
                    "mult(" => Ok(Assertion::MultEq {
                        name,
                        value: v.parse().map_err(|_| parse_err(lineno, "bad integer"))?,
                    }),
                    _ => Ok(Assertion::HtEq {
                        name,
                        value: v.parse().map_err(|_| parse_err(lineno, "bad integer"))?,
                    }),
                };
            }
            if prefix == "pd(" {
                if let Some(v) = after.strip_prefix("<=") {
                    return Ok(Assertion::PdLe {
                        name,
                        value: v
                            .trim()
                            .parse()
                            .map_err(|_| parse_err(lineno, "bad integer"))?,
                    });
                }
            }
            return Err(parse_err(lineno, format!("bad comparison in `{rest}`")));
        }
    }
    if let Some(tail) = rest.strip_prefix("hilbert(") {
        let close = tail
            .find(')')
            .ok_or_else(|| parse_err(lineno, "missing ')'"))?;
        let left = tail[..close].trim().to_string();
        let after = tail[close + 1..].trim();
        let rhs = after
            .strip_prefix("==")
            .map(str::trim)
            .and_then(|s| s.strip_prefix("hilbert("))
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| parse_err(lineno, "expected hilbert(A) == hilbert(B)"))?;
        return Ok(Assertion::HilbertEq {
            left,
            right: rhs.trim().to_string(),
        });
    }
    if let Some(tail) = rest.strip_prefix("cm(") {
        let name = tail
            .strip_suffix(')')
            .ok_or_else(|| parse_err(lineno, "missing ')'"))?;
        return Ok(Assertion::IsCm {
            name: name.trim().to_string(),
        });
    }
    // Membership, scanning for the keyword at parenthesis depth zero.
    if let Some((poly, name)) = split_keyword(rest, " not in ") {
        return Ok(Assertion::NotMember {
            poly: poly.to_string(),
            name: name.to_string(),
        });
    }
    if let Some((poly, name)) = split_keyword(rest, " in ") {
        return Ok(Assertion::Member {
            poly: poly.to_string(),
            name: name.to_string(),
        });
    }
    // Ideal equality: NAME == <expr>.
    if let Some((lhs, rhs)) = rest.split_once("==") {
        let lhs = lhs.trim();
        if !is_ident(lhs) {
            return Err(parse_err(
                lineno,
                "left side of an ideal equality must be a bound name",
            ));
        }
        return Ok(Assertion::IdealEq {
            name: lhs.to_string(),
            expr: parse_expr(rhs.trim(), lineno)?,
        });
    }
    Err(parse_err(lineno, format!("unrecognized assertion `{rest}`")))
}

fn split_keyword<'a>(text: &'a str, kw: &str) -> Option<(&'a str, &'a str)> {
    let mut depth = 0usize;
    let bytes = text.as_bytes();
    for i in 0..text.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth == 0 && text[i..].starts_with(kw) {
            return Some((text[..i].trim(), text[i + kw.len()..].trim()));
        }
    }
    None
}

/// Structural validation against the declared ring: every polynomial parses,
/// every referenced name is bound earlier, binding names avoid variables.
fn typecheck(file: &ClaimFile) -> Result<(), Error> {
    let ring = build_ring(&file.ring, None)?;
    for claim in &file.claims {
        let mut bound: Vec<&str> = Vec::new();
        for (name, expr) in &claim.bindings {
            if ring.var_index(name).is_some() {
                return Err(parse_err(
                    0,
                    format!("claim {}: binding {name:?} shadows a ring variable", claim.id),
                ));
            }
            check_expr(expr, &ring, &bound, &claim.id)?;
            bound.push(name);
        }
        for a in &claim.assertions {
            for name in assertion_names(a) {
                if !bound.contains(&name) {
                    return Err(parse_err(
                        0,
                        format!(
                            "claim {}: assertion references unbound name {name:?}",
                            claim.id
                        ),
                    ));
                }
            }
            for poly in assertion_polys(a) {
                parse(poly, &ring)?;
            }
            if let Assertion::IdealEq { expr, .. } = a {
                check_expr(expr, &ring, &bound, &claim.id)?;
            }
        }
    }
    Ok(())
}

fn check_expr(expr: &Expr, ring: &PolyRing, bound: &[&str], claim_id: &str) -> Result<(), Error> {
    match expr {
        Expr::Name(n) => {
            if !bound.contains(&n.as_str()) && ring.var_index(n).is_none() {
                return Err(parse_err(
                    0,
                    format!("claim {claim_id}: unbound name {n:?}"),
                ));
            }
            Ok(())
        }
        Expr::Poly(text) => parse(text, ring).map(|_| ()),
        Expr::Int(_) => Ok(()),
        Expr::Call { args, .. } => {
            for a in args {
                check_expr(a, ring, bound, claim_id)?;
            }
            Ok(())
        }
    }
}

fn assertion_names(a: &Assertion) -> Vec<&str> {
    match a {
        Assertion::PdEq { name, .. }
        | Assertion::PdLe { name, .. }
        | Assertion::MultEq { name, .. }
        | Assertion::HtEq { name, .. }
        | Assertion::IsCm { name }
        | Assertion::Member { name, .. }
        | Assertion::NotMember { name, .. }
        | Assertion::IdealEq { name, .. } => vec![name],
        Assertion::HilbertEq { left, right } => vec![left, right],
    }
}

fn assertion_polys(a: &Assertion) -> Vec<&str> {
    match a {
        Assertion::Member { poly, .. } | Assertion::NotMember { poly, .. } => vec![poly],
        _ => Vec::new(),
    }
}

// ---------------------------------------------------------------------------
// Formatting (canonical round-trip form)
// ---------------------------------------------------------------------------

pub fn format_claim_file(file: &ClaimFile) -> String {
    let mut out = String::new();
    let vars = file.ring.vars.join(",");
    let _ = writeln!(
        out,
        "ring char={} vars=[{vars}] order=grevlex",
        file.ring.characteristic
    );
    for claim in &file.claims {
        let _ = writeln!(out);
        if claim.locus.is_empty() {
            let _ = writeln!(out, "claim {}", claim.id);
        } else {
            let _ = writeln!(out, "claim {} : {}", claim.id, claim.locus);
        }
        for (name, expr) in &claim.bindings {
            let _ = writeln!(out, "let {name} = {}", format_expr(expr));
        }
        for a in &claim.assertions {
            let _ = writeln!(out, "assert {}", format_assertion(a));
        }
    }
    out
}

pub fn format_expr(expr: &Expr) -> String {
    match expr {
        Expr::Name(n) => n.clone(),
        Expr::Poly(p) => p.clone(),
        Expr::Int(n) => n.to_string(),
        Expr::Call { func, args } => {
            let args: Vec<String> = args.iter().map(format_expr).collect();
            format!("{func}({})", args.join(", "))
        }
    }
}

pub fn format_assertion(a: &Assertion) -> String {
    match a {
        Assertion::PdEq { name, value } => format!("pd({name}) == {value}"),
        Assertion::PdLe { name, value } => format!("pd({name}) <= {value}"),
        Assertion::IdealEq { name, expr } => format!("{name} == {}", format_expr(expr)),
        Assertion::Member { poly, name } => format!("{poly} in {name}"),
        Assertion::NotMember { poly, name } => format!("{poly} not in {name}"),
        Assertion::MultEq { name, value } => format!("mult({name}) == {value}"),
        Assertion::HtEq { name, value } => format!("ht({name}) == {value}"),
        Assertion::HilbertEq { left, right } => format!("hilbert({left}) == hilbert({right})"),
        Assertion::IsCm { name } => format!("cm({name})"),
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

pub fn build_ring(decl: &RingDecl, characteristic: Option<u32>) -> Result<PolyRing, Error> {
    let ch = characteristic.unwrap_or(decl.characteristic);
    let field = FieldSpec::from_char(ch)?;
    PolyRing::new(decl.vars.clone(), field, MonomialOrder::GrevLex)
}

struct Env {
    ring: PolyRing,
    bindings: BTreeMap<String, Ideal>,
    seed: u64,
}

impl Env {
    fn lookup(&self, name: &str) -> Result<Ideal, Error> {
        if let Some(i) = self.bindings.get(name) {
            return Ok(i.clone());
        }
        if let Some(v) = self.ring.var_index(name) {
            return Ok(Ideal::new(
                &self.ring,
                vec![Polynomial::var(&self.ring, v)],
            )?);
        }
        Err(Error::domain(format!("unbound name '{name}'")))
    }
}

fn eval_expr(expr: &Expr, env: &Env) -> Result<Ideal, Error> {
    match expr {
        Expr::Name(n) => env.lookup(n),
        Expr::Poly(text) => {
            let p = parse(text, &env.ring)?;
            Ok(Ideal::new(&env.ring, vec![p])?)
        }
        Expr::Int(n) => Err(Error::domain(format!(
            "integer {n} used where an ideal was expected"
        ))),
        Expr::Call { func, args } => eval_call(func, args, env),
    }
}

fn eval_int(expr: &Expr) -> Result<i64, Error> {
    match expr {
        Expr::Int(n) => Ok(*n),
        other => Err(Error::domain(format!(
            "expected an integer, found {}",
            format_expr(other)
        ))),
    }
}

fn eval_call(func: &str, args: &[Expr], env: &Env) -> Result<Ideal, Error> {
    let need = |n: usize| -> Result<(), Error> {
        if args.len() != n {
            return Err(Error::domain(format!("{func} expects {n} arguments")));
        }
        Ok(())
    };
    match func {
        "ideal" => {
            let mut gens = Vec::new();
            for a in args {
                match a {
                    Expr::Poly(text) => gens.push(parse(text, &env.ring)?),
                    Expr::Name(n) => {
                        if let Some(v) = env.ring.var_index(n) {
                            gens.push(Polynomial::var(&env.ring, v));
                        } else {
                            return Err(Error::domain(format!(
                                "ideal(...) takes polynomials, found binding '{n}'"
                            )));
                        }
                    }
                    other => {
                        return Err(Error::domain(format!(
                            "ideal(...) takes polynomials, found {}",
                            format_expr(other)
                        )))
                    }
                }
            }
            Ok(Ideal::new(&env.ring, gens)?)
        }
        "sum" | "intersect" | "product" => {
            if args.len() < 2 {
                return Err(Error::domain(format!(
                    "{func} expects at least 2 arguments"
                )));
            }
            let mut acc = eval_expr(&args[0], env)?;
            for a in &args[1..] {
                let rhs = eval_expr(a, env)?;
                acc = match func {
                    "sum" => acc.sum(&rhs)?,
                    "intersect" => acc.intersect(&rhs)?,
                    _ => acc.product(&rhs)?,
                };
            }
            Ok(acc)
        }
        "power" => {
            need(2)?;
            let base = eval_expr(&args[0], env)?;
            let k = eval_int(&args[1])?;
            if k < 1 {
                return Err(Error::domain("power expects an exponent >= 1"));
            }
            Ok(base.power(k as u32)?)
        }
        "colon" => {
            need(2)?;
            let lhs = eval_expr(&args[0], env)?;
            let rhs = eval_expr(&args[1], env)?;
            Ok(lhs.colon(&rhs)?)
        }
        "saturate" => {
            need(2)?;
            let lhs = eval_expr(&args[0], env)?;
            let rhs = eval_expr(&args[1], env)?;
            Ok(lhs.saturate(&rhs)?)
        }
        "eliminate" => {
            need(2)?;
            let lhs = eval_expr(&args[0], env)?;
            let k = eval_int(&args[1])?;
            if k < 0 {
                return Err(Error::domain("eliminate expects a count >= 0"));
            }
            Ok(lhs.eliminate(k as usize)?)
        }
        "degree_part" => {
            need(2)?;
            let lhs = eval_expr(&args[0], env)?;
            let n = eval_int(&args[1])?;
            if n < 0 {
                return Err(Error::domain("degree_part expects a degree >= 0"));
            }
            Ok(lhs.degree_part(n as u32)?)
        }
        "link" => {
            need(2)?;
            let c = eval_expr(&args[0], env)?;
            let j = eval_expr(&args[1], env)?;
            let w = CompleteIntersectionWitness {
                gens: c.generators().to_vec(),
                verified: false,
            };
            Ok(link(&w, &j)?.link)
        }
        "unmixed" => {
            if args.is_empty() || args.len() > 2 {
                return Err(Error::domain("unmixed expects 1 or 2 arguments"));
            }
            let j = eval_expr(&args[0], env)?;
            if args.len() == 2 {
                let c = eval_expr(&args[1], env)?;
                let w = CompleteIntersectionWitness {
                    gens: c.generators().to_vec(),
                    verified: false,
                };
                Ok(j.unmixed_part(Some(&w), env.seed)?)
            } else {
                Ok(j.unmixed_part(None, env.seed)?)
            }
        }
        other => Err(Error::domain(format!("unknown function '{other}'"))),
    }
}

fn fnv1a(text: &str) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for b in text.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Runs a single claim against a ring built from the file's declaration
/// (with an optional characteristic override). Computational failures are
/// reported as failed assertions, never as panics.
pub fn run_claim(decl: &RingDecl, claim: &Claim, opts: &RunOptions) -> ClaimResult {
    let started = Instant::now();
    let mut outcomes = Vec::new();
    let mut euler_failures = Vec::new();

    match build_env(decl, claim, opts) {
        Err(e) => {
            outcomes.push(AssertionOutcome {
                index: 0,
                text: "<bindings>".into(),
                pass: false,
                witness: format!("failed to evaluate bindings: {e}"),
            });
        }
        Ok(env) => {
            for (index, assertion) in claim.assertions.iter().enumerate() {
                let text = format_assertion(assertion);
                let (pass, witness) = match check_assertion(assertion, &env) {
                    Ok(pair) => pair,
                    Err(e) => (false, format!("evaluation error: {e}")),
                };
                outcomes.push(AssertionOutcome {
                    index,
                    text,
                    pass,
                    witness,
                });
            }
            if opts.check_euler {
                for (name, ideal) in &env.bindings {
                    match ideal.euler_check() {
                        Ok(true) => {}
                        Ok(false) => {
                            euler_failures.push(format!("euler check failed for binding '{name}'"))
                        }
                        Err(e) => euler_failures
                            .push(format!("euler check errored for binding '{name}': {e}")),
                    }
                }
            }
        }
    }

    ClaimResult {
        id: claim.id.clone(),
        locus: claim.locus.clone(),
        outcomes,
        euler_failures,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

fn build_env(decl: &RingDecl, claim: &Claim, opts: &RunOptions) -> Result<Env, Error> {
    let ring = build_ring(decl, opts.characteristic)?;
    let mut env = Env {
        ring,
        bindings: BTreeMap::new(),
        seed: opts.seed ^ fnv1a(&claim.id),
    };
    for (name, expr) in &claim.bindings {
        let value =
            eval_expr(expr, &env).map_err(|e| Error::domain(format!("binding '{name}': {e}")))?;
        env.bindings.insert(name.clone(), value);
    }
    Ok(env)
}

fn check_assertion(a: &Assertion, env: &Env) -> Result<(bool, String), Error> {
    Ok(match a {
        Assertion::PdEq { name, value } => {
            let pd = env.lookup(name)?.pd()?;
            (pd == *value, format!("computed pd = {pd}"))
        }
        Assertion::PdLe { name, value } => {
            let pd = env.lookup(name)?.pd()?;
            (pd <= *value, format!("computed pd = {pd}"))
        }
        Assertion::MultEq { name, value } => {
            let e = env.lookup(name)?.multiplicity()?;
            (e == *value, format!("computed multiplicity = {e}"))
        }
        Assertion::HtEq { name, value } => {
            let h = env.lookup(name)?.height()?;
            (h == *value, format!("computed height = {h}"))
        }
        Assertion::IsCm { name } => {
            let ideal = env.lookup(name)?;
            let pd = ideal.pd()?;
            let ht = ideal.height()?;
            (pd == ht, format!("pd = {pd}, height = {ht}"))
        }
        Assertion::Member { poly, name } => {
            let ideal = env.lookup(name)?;
            let p = parse(poly, &env.ring)?;
            let residue = ideal.groebner_basis()?.reduce(&p)?;
            if residue.is_zero() {
                (true, "member".into())
            } else {
                (
                    false,
                    format!("normal form {}", trefoil_core::format(&residue)),
                )
            }
        }
        Assertion::NotMember { poly, name } => {
            let ideal = env.lookup(name)?;
            let p = parse(poly, &env.ring)?;
            if ideal.member(&p)? {
                (false, "element is a member".into())
            } else {
                (true, "not a member".into())
            }
        }
        Assertion::IdealEq { name, expr } => {
            let lhs = env.lookup(name)?;
            let rhs = eval_expr(expr, env)?;
            if lhs.equal(&rhs)? {
                (true, "ideals equal".into())
            } else {
                (false, first_difference(&lhs, &rhs)?)
            }
        }
        Assertion::HilbertEq { left, right } => {
            let l = env.lookup(left)?;
            let r = env.lookup(right)?;
            let hl = l.hilbert_series()?.clone();
            let hr = r.hilbert_series()?.clone();
            (
                hl == hr,
                format!("numerators {:?} vs {:?}", hl.numerator(), hr.numerator()),
            )
        }
    })
}

fn first_difference(lhs: &Ideal, rhs: &Ideal) -> Result<String, Error> {
    for g in lhs.generators() {
        if !rhs.member(g)? {
            return Ok(format!(
                "left generator {} not in right side",
                trefoil_core::format(g)
            ));
        }
    }
    for g in rhs.generators() {
        if !lhs.member(g)? {
            return Ok(format!(
                "right generator {} not in left side",
                trefoil_core::format(g)
            ));
        }
    }
    Ok("sides differ".into())
}

/// An ideal file: the claim grammar minus claims and assertions, used by the
/// ad-hoc kernel commands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFile {
    pub ring: RingDecl,
    pub bindings: Vec<(String, Expr)>,
}

pub fn parse_ideal_file(text: &str) -> Result<IdealFile, Error> {
    let mut ring: Option<RingDecl> = None;
    let mut bindings: Vec<(String, Expr)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ring ") {
            if ring.is_some() {
                return Err(parse_err(lineno, "duplicate ring declaration"));
            }
            ring = Some(parse_ring_decl(rest, lineno)?);
        } else if let Some(rest) = line.strip_prefix("let ") {
            if ring.is_none() {
                return Err(parse_err(lineno, "binding before ring declaration"));
            }
            let (name, expr_text) = rest
                .split_once('=')
                .ok_or_else(|| parse_err(lineno, "expected `let NAME = <expr>`"))?;
            let name = name.trim().to_string();
            if !is_ident(&name) {
                return Err(parse_err(lineno, format!("bad binding name {name:?}")));
            }
            if bindings.iter().any(|(n, _)| *n == name) {
                return Err(parse_err(lineno, format!("duplicate binding {name:?}")));
            }
            bindings.push((name, parse_expr(expr_text.trim(), lineno)?));
        } else {
            return Err(parse_err(lineno, format!("unrecognized line: {line}")));
        }
    }
    let ring = ring.ok_or_else(|| parse_err(1, "missing ring declaration"))?;
    // Reuse the claim checker by viewing the bindings as one claim.
    let view = ClaimFile {
        ring: ring.clone(),
        claims: vec![Claim {
            id: "file".into(),
            locus: String::new(),
            bindings: bindings.clone(),
            assertions: Vec::new(),
        }],
    };
    typecheck(&view)?;
    Ok(IdealFile { ring, bindings })
}

/// Evaluates an ideal file's bindings into concrete ideals.
pub fn eval_ideal_file(
    file: &IdealFile,
    characteristic: Option<u32>,
    seed: u64,
) -> Result<(PolyRing, BTreeMap<String, Ideal>), Error> {
    let ring = build_ring(&file.ring, characteristic)?;
    let mut env = Env {
        ring: ring.clone(),
        bindings: BTreeMap::new(),
        seed,
    };
    for (name, expr) in &file.bindings {
        let value =
            eval_expr(expr, &env).map_err(|e| Error::domain(format!("binding '{name}': {e}")))?;
        env.bindings.insert(name.clone(), value);
    }
    Ok((ring, env.bindings))
}

/// Runs every claim in the file (subject to the filter), in order.
pub fn run_all(file: &ClaimFile, opts: &RunOptions) -> Vec<ClaimResult> {
    file.claims
        .iter()
        .filter(|c| match &opts.filter {
            Some(f) => c.id.contains(f.as_str()),
            None => true,
        })
        .map(|c| run_claim(&file.ring, c, opts))
        .collect()
}
