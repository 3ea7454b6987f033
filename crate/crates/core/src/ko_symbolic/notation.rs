//! Text and JSON forms of KO elements.
//!
//! Grammar accepted by [`parse_ko`] (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' int]
//! atom   := int | '(' expr ')'
//!         | '[' vec ',' vec ']' ['^' sup]        generator [I,J]^(s)
//!         | 'X_' set ['^' sup]                   X_S^(s); X_1^2 is a power
//!         | 'alpha' | 'beta' ['^' sup] | 'e'     KO* scalars (also α, β)
//!         | 'gamma' ['^' sup]                    γʲ, acts on the rest of the term
//! vec    := '(' int (',' int)* ')'
//! set    := digits | '{' labels '}' | '{{' labels '}}'
//! sup    := int | '(' int ')' | '{' sup '}'
//! ```

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exponents::VertexSet;

use super::element::KoElement;
use super::g1::g1_class;
use super::scalar::{render_scalar_term, KoScalar};

/// Joins signed terms as `a - b + c`.
pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (n, p) in parts.iter().enumerate() {
        match (n, p.strip_prefix('-')) {
            (0, _) => out.push_str(p),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

fn render_vec(v: &crate::exponents::Exponents) -> String {
    v.to_string()
}

/// Renders in bracket notation, e.g. `alpha + 2[(1,0),(0,1)]^1`.
pub fn render(a: &KoElement) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = a.scalar().terms().map(|(&t, &c)| render_scalar_term(t, c)).collect();
    for (sym, &c) in a.symbols() {
        let sup = if sym.s < 0 { format!("({})", sym.s) } else { sym.s.to_string() };
        let body = format!("[{},{}]^{}", render_vec(&sym.i), render_vec(&sym.j), sup);
        parts.push(match c {
            1 => body,
            -1 => format!("-{body}"),
            c => format!("{c}{body}"),
        });
    }
    join_signed(&parts)
}

/// Machine-readable form of an element.
pub fn to_json(a: &KoElement) -> Value {
    let scalar: Vec<Value> = a
        .scalar()
        .terms()
        .map(|(&t, &c)| json!({ "token": render_scalar_term(t, 1), "coeff": c.to_string() }))
        .collect();
    let symbols: Vec<Value> = a
        .symbols()
        .map(|(sym, &c)| json!({ "i": sym.i.to_vec(), "j": sym.j.to_vec(), "s": sym.s, "coeff": c.to_string() }))
        .collect();
    json!({
        "vars": a.vars(),
        "degree": a.degree(),
        "scalar": scalar,
        "symbols": symbols,
        "text": render(a),
    })
}

#[derive(Debug, Clone)]
enum Ast {
    Int(i128),
    Symbol(Vec<u32>, Vec<u32>, i64),
    Class(Vec<usize>, i64),
    Scalar(KoScalar),
    Gamma(i64),
    Sum(Vec<(bool, Ast)>),
    Product(Vec<Ast>),
    Power(Box<Ast>, u32),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        let n = word.chars().count();
        let matches = self
            .chars
            .get(self.pos..self.pos + n)
            .is_some_and(|w| w.iter().map(|&(_, c)| c).eq(word.chars()));
        // Do not split identifiers such as "alphax"; whitespace separates.
        let end = self.chars.get(self.pos + n - 1).map(|&(i, c)| i + c.len_utf8());
        let boundary = !self
            .chars
            .get(self.pos + n)
            .is_some_and(|&(i, c)| c.is_ascii_alphabetic() && Some(i) == end);
        if matches && boundary {
            self.pos += n;
        }
        matches && boundary
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn int(&mut self) -> Result<i128> {
        let neg = self.eat('-');
        match self.digits() {
            Some(d) => match d.parse::<i128>() {
                Ok(v) => Ok(if neg { -v } else { v }),
                Err(_) => self.err("integer out of range"),
            },
            None => self.err("expected an integer"),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let v = self.int()?;
        i64::try_from(v).or_else(|_| self.err("integer out of range"))
    }

    /// `int`, `(int)` or `{...}` around either.
    fn superscript(&mut self) -> Result<i64> {
        if self.eat('{') {
            let v = self.superscript()?;
            self.expect('}')?;
            Ok(v)
        } else if self.eat('(') {
            let v = self.small_int()?;
            self.expect(')')?;
            Ok(v)
        } else {
            self.small_int()
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut terms = Vec::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            terms.push((neg, self.term()?));
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(Ast::Sum(terms))
    }

    fn term(&mut self) -> Result<Ast> {
        let mut factors = vec![self.factor()?];
        loop {
            // `*` is optional: juxtaposition also multiplies.
            let starts_factor = |c: char| c == '(' || c == '[' || c.is_alphanumeric() || "αβγ".contains(c);
            if self.eat('*') || self.peek().is_some_and(starts_factor) {
                factors.push(self.factor()?);
            } else {
                return Ok(Ast::Product(factors));
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let atom = self.atom()?;
        if matches!(atom, Ast::Int(_) | Ast::Sum(_)) && self.eat('^') {
            let k = self.superscript()?;
            return self.power(atom, k);
        }
        Ok(atom)
    }

    fn power(&self, atom: Ast, k: i64) -> Result<Ast> {
        match u32::try_from(k) {
            Ok(k) => Ok(Ast::Power(Box::new(atom), k)),
            Err(_) => self.err("negative powers are not supported"),
        }
    }

    fn vector(&mut self) -> Result<Vec<u32>> {
        self.expect('(')?;
        let mut v = Vec::new();
        loop {
            let x = self.int()?;
            match u32::try_from(x) {
                Ok(x) => v.push(x),
                Err(_) => return self.err("exponents must be non-negative"),
            }
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        Ok(v)
    }

    fn vertex_set(&mut self) -> Result<Vec<usize>> {
        if self.eat('{') {
            let doubled = self.eat('{');
            let mut labels = Vec::new();
            if self.peek() != Some('}') {
                loop {
                    let d = match self.digits() {
                        Some(d) => d,
                        None => return self.err("expected a vertex label"),
                    };
                    // "{12}" reads as {1,2}; labels are single digits.
                    labels.extend(d.chars().map(|c| c.to_digit(10).unwrap() as usize));
                    if !self.eat(',') {
                        break;
                    }
                }
            }
            self.expect('}')?;
            if doubled {
                self.expect('}')?;
            }
            Ok(labels)
        } else if self.eat('∅') {
            Ok(Vec::new())
        } else {
            match self.digits() {
                Some(d) => Ok(d.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()),
                None => self.err("expected a vertex set after X_"),
            }
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(c) if c.is_ascii_digit() => Ok(Ast::Int(self.int()?)),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                let i = self.vector()?;
                self.expect(',')?;
                let j = self.vector()?;
                self.expect(']')?;
                let s = if self.eat('^') { self.superscript()? } else { 0 };
                if i.len() != j.len() {
                    return self.err("I and J have different lengths");
                }
                Ok(Ast::Symbol(i, j, s))
            }
            Some('X') => {
                self.pos += 1;
                self.expect('_')?;
                let labels = self.vertex_set()?;
                if !self.eat('^') {
                    return Ok(Ast::Class(labels, 0));
                }
                // ^(s) and ^{(s)} index the class; a bare ^k is a power.
                let indexed = matches!(self.peek(), Some('('))
                    || (self.peek() == Some('{') && self.chars.get(self.pos + 1).map(|&(_, c)| c) == Some('('));
                if indexed {
                    let s = self.superscript()?;
                    Ok(Ast::Class(labels, s))
                } else {
                    let k = self.superscript()?;
                    self.power(Ast::Class(labels, 0), k)
                }
            }
            Some(_) => {
                if self.eat_word("alpha") || self.eat('α') {
                    Ok(Ast::Scalar(KoScalar::alpha()))
                } else if self.eat_word("beta") || self.eat('β') {
                    let t = if self.eat('^') { self.superscript()? } else { 1 };
                    Ok(Ast::Scalar(KoScalar::beta(t)))
                } else if self.eat_word("gamma") || self.eat('γ') {
                    let j = if self.eat('^') { self.superscript()? } else { 1 };
                    Ok(Ast::Gamma(j))
                } else if self.eat_word("e") {
                    Ok(Ast::Scalar(KoScalar::e()))
                } else {
                    self.err("unexpected character")
                }
            }
        }
    }
}

fn max_vars(ast: &Ast) -> usize {
    match ast {
        Ast::Symbol(i, _, _) => i.len(),
        Ast::Class(labels, _) => labels.iter().copied().max().unwrap_or(0),
        Ast::Sum(ts) => ts.iter().map(|(_, t)| max_vars(t)).max().unwrap_or(0),
        Ast::Product(fs) => fs.iter().map(max_vars).max().unwrap_or(0),
        Ast::Power(a, _) => max_vars(a),
        Ast::Int(_) | Ast::Scalar(_) | Ast::Gamma(_) => 0,
    }
}

fn eval(ast: &Ast, m: usize) -> Result<KoElement> {
    match ast {
        Ast::Int(n) => Ok(KoElement::integer(m, *n)),
        Ast::Scalar(s) => KoElement::from_scalar(m, s.clone()),
        Ast::Symbol(i, j, s) => {
            if i.len() != m {
                return Err(Error::VariableMismatch(i.len(), m));
            }
            KoElement::symbol(i, j, *s)
        }
        Ast::Class(labels, s) => {
            let set = VertexSet::from_labels(labels)
                .filter(|v| v.is_subset(VertexSet::full(m)))
                .ok_or_else(|| Error::Precondition(format!("vertex labels {labels:?} outside 1..{m}")))?;
            g1_class(m, set, *s)
        }
        Ast::Gamma(_) => Err(Error::Precondition("gamma must multiply a reduced class".into())),
        Ast::Power(a, k) => {
            let base = eval(a, m)?;
            let mut acc = KoElement::one(m);
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            Ok(acc)
        }
        Ast::Sum(terms) => {
            let mut acc: Option<KoElement> = None;
            for (neg, t) in terms {
                let v = eval(t, m)?;
                let v = if *neg { v.neg() } else { v };
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.add(&v)?,
                });
            }
            Ok(acc.unwrap_or_else(|| KoElement::zero(m, 0)))
        }
        Ast::Product(factors) => eval_product(factors, m),
    }
}

fn eval_product(factors: &[Ast], m: usize) -> Result<KoElement> {
    let mut acc = KoElement::one(m);
    for (n, f) in factors.iter().enumerate() {
        if let Ast::Gamma(j) = f {
            let rest = eval_product(&factors[n + 1..], m)?;
            return acc.mul(&rest.gamma_shift(*j)?);
        }
        acc = acc.mul(&eval(f, m)?)?;
    }
    Ok(acc)
}

/// Parses an element; `vars` defaults to the largest variable count the
/// expression mentions (at least 1).
pub fn parse_ko(src: &str, vars: Option<usize>) -> Result<KoElement> {
    let mut p = Parser::new(src);
    let ast = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let needed = max_vars(&ast);
    let m = match vars {
        Some(m) if m < needed => return Err(Error::VariableMismatch(needed, m)),
        Some(m) => m,
        None => needed.max(1),
    };
    if m > crate::exponents::MAX_VARS {
        return Err(Error::Precondition(format!("at most {} variables", crate::exponents::MAX_VARS)));
    }
    eval(&ast, m)
}
