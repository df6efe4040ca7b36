//! Sparse polynomials over the rationals in the correlation variables `r_ij`.
//!
//! There are 15 variables `r12 > r13 > ... > r16 > r23 > ... > r56`, enough for
//! `m <= 6`; smaller ground sets use a prefix-compatible subset. Terms are
//! kept in graded lexicographic order with `r12` the largest variable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rational, RationalMatrix};
use crate::relation::{Couple, Permutation};

pub const NVARS: usize = 15;
/// Largest exponent allowed for a single variable.
pub const MAX_DEGREE: u32 = 64;

/// Index of `r_{i+1, j+1}` (zero-based `i < j < 6`).
pub fn var_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    assert!(j < 6 && i != j, "variable r{}{} out of range", i + 1, j + 1);
    (0..i).map(|a| 5 - a).sum::<usize>() + (j - i - 1)
}

/// Zero-based pair of variable `v`.
pub fn var_pair(v: usize) -> (usize, usize) {
    let mut p = v;
    for i in 0..6 {
        let row = 5 - i;
        if p < row {
            return (i, i + 1 + p);
        }
        p -= row;
    }
    panic!("variable index {v} out of range")
}

pub fn var_name(v: usize) -> String {
    let (i, j) = var_pair(v);
    format!("r{}{}", i + 1, j + 1)
}

/// Variable indices used by ground set `[m]`, in order.
pub fn vars_of(m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            out.push(var_index(i, j));
        }
    }
    out
}

/// Exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u8; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; NVARS];
        e[v] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut e = [0u8; NVARS];
        for (k, slot) in e.iter_mut().enumerate() {
            let s = self.0[k] as u32 + other.0[k] as u32;
            if s > MAX_DEGREE {
                return Err(Error::DegreeOverflow(MAX_DEGREE));
            }
            *slot = s as u8;
        }
        Ok(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|k| other.0[k] - self.0[k]))
    }

    fn lex_cmp(&self, other: &Monomial, vars: &[usize]) -> Ordering {
        for &v in vars {
            match self.0[v].cmp(&other.0[v]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    /// Graded lexicographic, `r12` largest.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A monomial order used by [`reduce_with_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded lexicographic with the variables ranked as listed (first largest).
    GradedLex(Vec<usize>),
    /// Pure lexicographic with the variables ranked as listed.
    Lex(Vec<usize>),
}

impl MonomialOrder {
    /// The default order: graded lex with `r12 > r13 > ...`.
    pub fn default_grlex() -> Self {
        MonomialOrder::GradedLex((0..NVARS).collect())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GradedLex(vars) => a.degree().cmp(&b.degree()).then_with(|| a.lex_cmp(b, vars)),
            MonomialOrder::Lex(vars) => a.lex_cmp(b, vars),
        }
    }

    fn ranked_vars(&self) -> &[usize] {
        match self {
            MonomialOrder::GradedLex(v) | MonomialOrder::Lex(v) => v,
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, vars) = match self {
            MonomialOrder::GradedLex(v) => ("grlex", v),
            MonomialOrder::Lex(v) => ("lex", v),
        };
        let names: Vec<String> = vars.iter().map(|&v| var_name(v)).collect();
        write!(f, "{kind}({})", names.join(">"))
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The variable `r_{i+1, j+1}` (zero-based indices).
    pub fn var(i: usize, j: usize) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(var_index(i, j)), Rational::one());
        p
    }

    pub fn from_var(v: usize) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(v), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Leading monomial and coefficient in graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..NVARS)
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (mt, ct) in &self.terms {
            out.add_term(mt.mul(m)?, ct * c);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// Evaluates with `values[v]` for variable `v`.
    pub fn eval(&self, values: &[Rational; NVARS]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(values[v].clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Evaluates at the off-diagonal entries of a symmetric matrix.
    pub fn eval_matrix(&self, r: &RationalMatrix) -> Result<Rational> {
        Ok(self.eval(&point_of(r)?))
    }

    pub fn derivative(&self, v: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[v] -= 1;
            out.add_term(d, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Substitutes `r_v -> r_v + shift[v]` for all variables.
    pub fn shifted(&self, shift: &[Rational; NVARS]) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        let lin: Vec<Polynomial> = (0..NVARS)
            .map(|v| &Polynomial::from_var(v) + &Polynomial::constant(shift[v].clone()))
            .collect();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&lin[v].pow(e as u32)?)?;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Replaces variable `v` by the polynomial `p`.
    pub fn substitute(&self, v: usize, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest.0[v];
            rest.0[v] = 0;
            let mut base = Polynomial::zero();
            base.add_term(rest, c.clone());
            out = &out + &base.try_mul(&p.pow(e as u32)?)?;
        }
        Ok(out)
    }

    /// Homogeneous part of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Lowest-degree nonzero homogeneous part.
    pub fn lowest_part(&self) -> Polynomial {
        match self.terms.keys().map(Monomial::degree).min() {
            Some(d) => self.homogeneous_part(d),
            None => Polynomial::zero(),
        }
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Polynomial::zero(),
        }
    }

    /// Parses a sum of products, e.g. `r12 - r13*r23` or `-3/4*r14^2*r23 + 1`.
    ///
    /// Parentheses are allowed. Names other than `rij` must be bound in
    /// `params`.
    pub fn parse_with(text: &str, params: &[(&str, Rational)]) -> Result<Polynomial> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            params,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("trailing input in `{text}`")));
        }
        Ok(p)
    }

    pub fn parse(text: &str) -> Result<Polynomial> {
        Self::parse_with(text, &[])
    }
}

/// Off-diagonal entries of a symmetric matrix as a variable assignment.
pub fn point_of(r: &RationalMatrix) -> Result<[Rational; NVARS]> {
    if !r.is_square() || r.rows() > 6 {
        return Err(Error::Dimension(format!(
            "{}x{} matrix does not fit the variable set",
            r.rows(),
            r.cols()
        )));
    }
    let mut vals: [Rational; NVARS] = std::array::from_fn(|_| Rational::zero());
    for i in 0..r.rows() {
        for j in i + 1..r.cols() {
            vals[var_index(i, j)] = r[(i, j)].clone();
        }
    }
    Ok(vals)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    /// Panics on exponent overflow; use [`Polynomial::try_mul`] to handle it.
    fn mul(self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("exponent overflow")
    }
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(var_name(v)),
            _ => parts.push(format!("{}^{}", var_name(v), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing graded lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            // a fraction `p/q` binds as one number
            if k + 1 < chars.len() && chars[k] == '/' && chars[k + 1].is_ascii_digit() {
                k += 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Token::Num(parse_rational(&s)?));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Token::Ident(chars[start..k].iter().collect()));
        } else if "+-*^()".contains(ch) {
            out.push(Token::Op(ch));
            k += 1;
        } else if ch == '\u{2212}' {
            out.push(Token::Op('-'));
            k += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{ch}` in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    params: &'a [(&'a str, Rational)],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.try_mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) if n.is_integer() && !n.is_negative() => {
                    self.pos += 1;
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::DegreeOverflow(MAX_DEGREE))?;
                    if e > MAX_DEGREE {
                        return Err(Error::DegreeOverflow(MAX_DEGREE));
                    }
                    return base.pow(e);
                }
                _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of polynomial".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(Polynomial::constant(n)),
            Token::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Token::Ident(name) => {
                if let Some((_, v)) = self.params.iter().find(|(p, _)| *p == name) {
                    return Ok(Polynomial::constant(v.clone()));
                }
                let digits: Vec<u32> = name
                    .strip_prefix('r')
                    .map(|s| s.chars().filter_map(|c| c.to_digit(10)).collect())
                    .unwrap_or_default();
                if name.len() == 3 && digits.len() == 2 {
                    let (i, j) = (digits[0] as usize, digits[1] as usize);
                    if i >= 1 && j >= 1 && i != j && i <= 6 && j <= 6 {
                        return Ok(Polynomial::var(i - 1, j - 1));
                    }
                }
                Err(Error::Parse(format!("unknown symbol `{name}`")))
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

/// Generic unit-diagonal symmetric matrix entry.
fn generic_entry(i: usize, j: usize) -> Polynomial {
    if i == j {
        Polynomial::one()
    } else {
        Polynomial::var(i, j)
    }
}

fn poly_det(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(Polynomial::one());
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut out = Polynomial::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let t = m[0][col].try_mul(&poly_det(&minor)?)?;
        out = if col % 2 == 0 { &out + &t } else { &out - &t };
    }
    Ok(out)
}

/// Symbolic `det(R_{iC, jC})` of the generic unit-diagonal correlation matrix.
pub fn ci_polynomial(c: &Couple) -> Polynomial {
    let m = c.ground();
    let (i, j) = c.pair();
    let mut rows: Vec<usize> = c.cond_indices();
    let mut cols = rows.clone();
    rows.push(i);
    cols.push(j);
    rows.sort_unstable();
    cols.sort_unstable();
    let mat: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|&a| cols.iter().map(|&b| generic_entry(a, b)).collect())
        .collect();
    debug_assert!(m <= 6);
    poly_det(&mat).expect("degrees are tiny")
}

/// Symbolic principal minor `det(R_{S,S})` for an index list `S`.
pub fn principal_minor_polynomial(indices: &[usize]) -> Polynomial {
    let mat: Vec<Vec<Polynomial>> = indices
        .iter()
        .map(|&a| indices.iter().map(|&b| generic_entry(a, b)).collect())
        .collect();
    poly_det(&mat).expect("degrees are tiny")
}

/// Generators `f_c` for all couples of a relation.
pub fn ci_ideal_generators(l: &crate::relation::Relation) -> Vec<Polynomial> {
    l.iter().map(|c| ci_polynomial(&c)).collect()
}

/// Jacobian with respect to the variables of `[m]` at a correlation matrix, and its rank.
pub fn jacobian_at(fs: &[Polynomial], r0: &RationalMatrix) -> Result<(RationalMatrix, usize)> {
    let point = point_of(r0)?;
    let vars = vars_of(r0.rows());
    let rows: Vec<Vec<Rational>> = fs
        .iter()
        .map(|f| vars.iter().map(|&v| f.derivative(v).eval(&point)).collect())
        .collect();
    let jac = if rows.is_empty() {
        RationalMatrix::zeros(0, vars.len())
    } else {
        RationalMatrix::from_rows(rows)?
    };
    let rank = jac.rank();
    Ok((jac, rank))
}

/// Lowest-degree form of `f` in the shifted coordinates `r - r0`.
pub fn min_form(f: &Polynomial, r0: &RationalMatrix) -> Result<Polynomial> {
    let point = point_of(r0)?;
    if !f.eval(&point).is_zero() {
        return Err(Error::NonVanishing);
    }
    Ok(f.shifted(&point)?.lowest_part())
}

/// Remainder of multivariate division by `gens` in graded lex order.
pub fn reduce(f: &Polynomial, gens: &[Polynomial]) -> Polynomial {
    reduce_with_order(f, gens, &MonomialOrder::default_grlex())
}

fn leading_in<'a>(p: &'a Polynomial, order: &MonomialOrder) -> Option<(&'a Monomial, &'a Rational)> {
    p.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
}

/// Remainder of multivariate division under an arbitrary monomial order.
pub fn reduce_with_order(f: &Polynomial, gens: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let divisors: Vec<(&Polynomial, Monomial, Rational)> = gens
        .iter()
        .filter_map(|g| leading_in(g, order).map(|(m, c)| (g, *m, c.clone())))
        .collect();
    let mut p = f.clone();
    let mut rem = Polynomial::zero();
    while let Some((lm, lc)) = leading_in(&p, order).map(|(m, c)| (*m, c.clone())) {
        match divisors.iter().find(|(_, m, _)| m.divides(&lm)) {
            Some((g, gm, gc)) => {
                let q = gm.quotient_of(&lm);
                let t = g.mul_term(&q, &(&lc / gc)).expect("degree bounded by the dividend");
                p = &p - &t;
            }
            None => {
                rem.add_term(lm, lc.clone());
                p.terms.remove(&lm);
            }
        }
    }
    rem
}

/// `gens` with the linear generators replaced by a reduced echelon basis of
/// their span in `order`, and the others reduced by that basis; the ideal is
/// unchanged.
pub fn interreduce_linear(gens: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut rest = Vec::new();
    for g in gens {
        if g.degree() > Some(1) {
            rest.push(g.clone());
            continue;
        }
        let r = reduce_with_order(g, &basis, order);
        let Some((lm, lc)) = leading_in(&r, order).map(|(m, c)| (*m, c.clone())) else { continue };
        let r = r.scale(&(Rational::one() / lc));
        for b in basis.iter_mut() {
            if let Some(c) = b.terms.get(&lm).cloned() {
                *b = &*b - &r.scale(&c);
            }
        }
        basis.push(r);
    }
    for g in rest {
        let r = reduce_with_order(&g, &basis, order);
        if !r.is_zero() {
            basis.push(r);
        }
    }
    basis
}

/// Result of trying several monomial orders for a membership test.
#[derive(Clone, Debug)]
pub struct Membership {
    /// Order that gave a zero remainder, if any.
    pub certified_by: Option<MonomialOrder>,
    /// Remainder in the default graded lex order.
    pub default_remainder: Polynomial,
}

impl Membership {
    pub fn is_certified(&self) -> bool {
        self.certified_by.is_some()
    }
}

/// One-sided membership test: division in graded lex, then in graded lex
/// and lex for every ranking of the variables that occur. Linear generators
/// are interreduced first in each order.
pub fn certify_membership(f: &Polynomial, gens: &[Polynomial]) -> Membership {
    let default_order = MonomialOrder::default_grlex();
    let default_remainder = reduce_with_order(f, &interreduce_linear(gens, &default_order), &default_order);
    if default_remainder.is_zero() {
        return Membership {
            certified_by: Some(default_order),
            default_remainder,
        };
    }
    let mut used: Vec<usize> = f.variables();
    for g in gens {
        used.extend(g.variables());
    }
    used.sort_unstable();
    used.dedup();
    if used.len() <= 7 {
        let others: Vec<usize> = (0..NVARS).filter(|v| !used.contains(v)).collect();
        for perm in Permutation::all(used.len()) {
            let mut ranked: Vec<usize> = (0..used.len()).map(|k| used[perm.apply(k)]).collect();
            ranked.extend(&others);
            for order in [MonomialOrder::GradedLex(ranked.clone()), MonomialOrder::Lex(ranked)] {
                if reduce_with_order(f, &interreduce_linear(gens, &order), &order).is_zero() {
                    return Membership {
                        certified_by: Some(order),
                        default_remainder,
                    };
                }
            }
        }
    }
    Membership {
        certified_by: None,
        default_remainder,
    }
}

/// Checks `target == Σ cofactor_k * gens_k` by expansion.
pub fn verify_combination(target: &Polynomial, cofactors: &[Polynomial], gens: &[Polynomial]) -> Result<bool> {
    if cofactors.len() != gens.len() {
        return Err(Error::Dimension("cofactor count differs from generator count".into()));
    }
    let mut sum = Polynomial::zero();
    for (c, g) in cofactors.iter().zip(gens) {
        sum = &sum + &c.try_mul(g)?;
    }
    Ok(&sum - target == Polynomial::zero())
}

/// Ranks variables in a monomial order; exposed for reports.
pub fn order_variables(order: &MonomialOrder) -> Vec<String> {
    order.ranked_vars().iter().map(|&v| var_name(v)).collect()
}
