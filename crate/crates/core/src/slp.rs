//! Straight-line programs over the single constant 1.
//!
//! A program of arity `n` owns the implicit prefix `%0 = 1`,
//! `%1 = x_1`, ..., `%n = x_n`; every explicit line adds, subtracts or
//! multiplies two strictly earlier positions. The program computes the
//! polynomial on its last line, and its length (`n` plus the number of
//! explicit lines) is the index of that line — an upper bound on the
//! shortest program computing the same polynomial.

use crate::arith;
use crate::poly::SparsePoly;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlpError {
    #[error("line %{position} references %{index}, which is not strictly earlier")]
    ForwardReference { position: usize, index: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("empty factor list")]
    EmptyList,
    #[error("term cap exceeded while expanding line %{line}")]
    TermCapExceeded { line: usize },
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0} is not an odd prime fitting in a machine word")]
    BadModulus(u64),
}

/// Operation of one explicit program line. Subtraction is ordered
/// (left minus right); addition and multiplication are commutative but
/// both operand orders are distinct instructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    Add,
    Sub,
    Mul,
}

impl OpKind {
    pub const ALL: [OpKind; 3] = [OpKind::Add, OpKind::Sub, OpKind::Mul];

    fn mnemonic(self) -> &'static str {
        match self {
            OpKind::Add => "add",
            OpKind::Sub => "sub",
            OpKind::Mul => "mul",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instruction {
    pub kind: OpKind,
    pub left: usize,
    pub right: usize,
}

impl Instruction {
    pub fn new(kind: OpKind, left: usize, right: usize) -> Self {
        Instruction { kind, left, right }
    }
}

/// A validated straight-line program.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slp {
    arity: usize,
    body: Vec<Instruction>,
}

impl Slp {
    /// Validates a raw program description. Every instruction must
    /// reference strictly earlier positions.
    pub fn new(arity: usize, body: Vec<Instruction>) -> Result<Self, SlpError> {
        for (i, ins) in body.iter().enumerate() {
            let position = arity + 1 + i;
            for index in [ins.left, ins.right] {
                if index >= position {
                    return Err(SlpError::ForwardReference { position, index });
                }
            }
        }
        Ok(Slp { arity, body })
    }

    /// The implicit-prefix-only program; its last line is `x_n` (or the
    /// constant 1 when the arity is 0).
    pub fn bare(arity: usize) -> Self {
        Slp { arity, body: Vec::new() }
    }

    pub(crate) fn new_unchecked(arity: usize, body: Vec<Instruction>) -> Self {
        debug_assert!(Slp::new(arity, body.clone()).is_ok());
        Slp { arity, body }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &[Instruction] {
        &self.body
    }

    /// Program length: arity plus explicit line count, i.e. the index of
    /// the last line.
    pub fn len(&self) -> usize {
        self.arity + self.body.len()
    }

    pub fn is_bare(&self) -> bool {
        self.body.is_empty()
    }

    fn eval_core<T: Clone>(
        &self,
        coords: &[T],
        one: T,
        add: impl Fn(&T, &T) -> T,
        sub: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        let mut values = Vec::with_capacity(self.len() + 1);
        values.push(one);
        values.extend_from_slice(coords);
        for ins in &self.body {
            let v = match ins.kind {
                OpKind::Add => add(&values[ins.left], &values[ins.right]),
                OpKind::Sub => sub(&values[ins.left], &values[ins.right]),
                OpKind::Mul => mul(&values[ins.left], &values[ins.right]),
            };
            values.push(v);
        }
        values.last().cloned().expect("values never empty")
    }

    pub fn eval_int(&self, coords: &[BigInt]) -> Result<BigInt, SlpError> {
        self.check_point_len(coords.len())?;
        Ok(self.eval_core(coords, BigInt::one(), |a, b| a + b, |a, b| a - b, |a, b| a * b))
    }

    pub fn eval_rat(&self, coords: &[BigRational]) -> Result<BigRational, SlpError> {
        self.check_point_len(coords.len())?;
        Ok(self.eval_core(coords, BigRational::one(), |a, b| a + b, |a, b| a - b, |a, b| a * b))
    }

    /// Evaluation modulo a word-size prime; coordinates are residues.
    pub fn eval_mod(&self, prime: u64, coords: &[u64]) -> Result<u64, SlpError> {
        self.check_point_len(coords.len())?;
        Ok(self.eval_core(
            coords,
            1 % prime,
            |a, b| arith::add_mod(*a, *b, prime),
            |a, b| arith::sub_mod(*a, *b, prime),
            |a, b| arith::mul_mod(*a, *b, prime),
        ))
    }

    pub fn eval(&self, point: &RingPoint) -> Result<RingValue, SlpError> {
        match point {
            RingPoint::Integers(coords) => self.eval_int(coords).map(RingValue::Integer),
            RingPoint::Rationals(coords) => self.eval_rat(coords).map(RingValue::Rational),
            RingPoint::ModP { prime, coords } => {
                self.eval_mod(*prime, coords).map(RingValue::ModP)
            }
        }
    }

    fn check_point_len(&self, found: usize) -> Result<(), SlpError> {
        if found != self.arity {
            return Err(SlpError::ArityMismatch { expected: self.arity, found });
        }
        Ok(())
    }

    /// Expands the program into the exact sparse polynomial it computes.
    /// Every intermediate line must stay within `term_cap` monomials;
    /// exceeding it reports the offending line so callers can fall back
    /// to fingerprint-only identity testing.
    pub fn expand_to_polynomial(&self, term_cap: usize) -> Result<SparsePoly, SlpError> {
        assert!(term_cap > 0, "term cap must be positive");
        let mut values = Vec::with_capacity(self.len() + 1);
        values.push(SparsePoly::constant(self.arity, BigInt::one()));
        for v in 0..self.arity {
            values.push(SparsePoly::variable(self.arity, v).expect("variable in range"));
        }
        for (i, ins) in self.body.iter().enumerate() {
            let (a, b) = (&values[ins.left], &values[ins.right]);
            let out = match ins.kind {
                OpKind::Add => a.add(b),
                OpKind::Sub => a.sub(b),
                OpKind::Mul => a.mul(b),
            }
            .expect("equal arity by construction");
            if out.num_terms() > term_cap {
                return Err(SlpError::TermCapExceeded { line: self.arity + 1 + i });
            }
            values.push(out);
        }
        Ok(values.pop().expect("values never empty"))
    }

    /// Substitutes `inners[j-1]` for variable `x_j`. All inner programs
    /// must share one arity, which becomes the arity of the result.
    pub fn compose(&self, inners: &[Slp]) -> Result<Slp, SlpError> {
        if inners.len() != self.arity {
            return Err(SlpError::ArityMismatch { expected: self.arity, found: inners.len() });
        }
        let shared = inners.first().map(|g| g.arity()).unwrap_or(0);
        for g in inners {
            if g.arity() != shared {
                return Err(SlpError::ArityMismatch { expected: shared, found: g.arity() });
            }
        }
        let mut b = SlpBuilder::new(shared);
        let identity: Vec<usize> = (1..=shared).collect();
        let outs: Vec<usize> = inners.iter().map(|g| b.append(g, &identity)).collect();
        let out = b.append(self, &outs);
        Ok(b.finish(out))
    }
}

impl fmt::Display for Slp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_slp(self))
    }
}

impl FromStr for Slp {
    type Err = SlpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_slp(s)
    }
}

/// Product of the factors, sharing the variable prefix: the bodies are
/// concatenated with index relocation and the outputs multiplied by a
/// chain of `count - 1` MUL lines. The result length is exactly
/// `arity + sum of factor body lengths + (count - 1)`.
pub fn product(factors: &[Slp]) -> Result<Slp, SlpError> {
    let first = factors.first().ok_or(SlpError::EmptyList)?;
    let shared = first.arity();
    for g in factors {
        if g.arity() != shared {
            return Err(SlpError::ArityMismatch { expected: shared, found: g.arity() });
        }
    }
    if factors.len() == 1 {
        return Ok(first.clone());
    }
    let mut b = SlpBuilder::new(shared);
    let identity: Vec<usize> = (1..=shared).collect();
    let outs: Vec<usize> = factors.iter().map(|g| b.append(g, &identity)).collect();
    let mut acc = outs[0];
    for &o in &outs[1..] {
        acc = b.push(OpKind::Mul, acc, o);
    }
    Ok(b.finish(acc))
}

/// Incremental program constructor. Positions returned by `push`,
/// `constant` and `append` are always valid operands for later lines, so
/// programs built here satisfy the ordering invariant by construction.
pub struct SlpBuilder {
    arity: usize,
    body: Vec<Instruction>,
    constants: BTreeMap<BigUint, usize>,
}

impl SlpBuilder {
    pub fn new(arity: usize) -> Self {
        SlpBuilder { arity, body: Vec::new(), constants: BTreeMap::new() }
    }

    /// Index of the most recent position (a variable when the body is
    /// still empty).
    pub fn last_position(&self) -> usize {
        self.arity + self.body.len()
    }

    pub fn push(&mut self, kind: OpKind, left: usize, right: usize) -> usize {
        assert!(
            left <= self.last_position() && right <= self.last_position(),
            "operands must reference existing positions"
        );
        self.body.push(Instruction::new(kind, left, right));
        self.last_position()
    }

    /// Position holding the nonnegative constant `value`, built once by
    /// a double-and-add chain over the constant 1 and memoized together
    /// with all intermediate values.
    pub fn constant(&mut self, value: &BigUint) -> usize {
        if value.is_one() {
            return 0;
        }
        if let Some(&pos) = self.constants.get(value) {
            return pos;
        }
        let pos = if value.is_zero() {
            self.push(OpKind::Sub, 0, 0)
        } else if (value % 2u32).is_zero() {
            let half = self.constant(&(value / 2u32));
            self.push(OpKind::Add, half, half)
        } else {
            let pred = self.constant(&(value - 1u32));
            self.push(OpKind::Add, pred, 0)
        };
        self.constants.insert(value.clone(), pos);
        pos
    }

    /// Inlines `slp`, reading its variable `x_v` from `operands[v-1]`
    /// and its constant from position 0. Returns the position holding
    /// the inlined program's last line.
    pub fn append(&mut self, slp: &Slp, operands: &[usize]) -> usize {
        assert_eq!(operands.len(), slp.arity(), "one operand per inlined variable");
        let base = self.last_position();
        let remap = |index: usize, emitted: usize| -> usize {
            if index == 0 {
                0
            } else if index <= slp.arity() {
                operands[index - 1]
            } else {
                debug_assert!(index - slp.arity() <= emitted);
                base + (index - slp.arity())
            }
        };
        for (i, ins) in slp.body().iter().enumerate() {
            self.push(ins.kind, remap(ins.left, i), remap(ins.right, i));
        }
        if slp.body().is_empty() {
            if slp.arity() == 0 {
                0
            } else {
                operands[slp.arity() - 1]
            }
        } else {
            self.last_position()
        }
    }

    /// Finishes the program so that its last line is `out`, multiplying
    /// by 1 when `out` is not already the final position.
    pub fn finish(mut self, out: usize) -> Slp {
        assert!(out <= self.last_position());
        if out != self.last_position() {
            self.push(OpKind::Mul, out, 0);
        }
        Slp { arity: self.arity, body: self.body }
    }

    pub(crate) fn body(&self) -> &[Instruction] {
        &self.body
    }

    pub(crate) fn arity(&self) -> usize {
        self.arity
    }
}

/// Evaluation context: which exact ring and which point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingPoint {
    Integers(Vec<BigInt>),
    Rationals(Vec<BigRational>),
    ModP { prime: u64, coords: Vec<u64> },
}

impl RingPoint {
    /// `prime` must be an odd word-size prime; coordinates are reduced.
    pub fn mod_p(prime: u64, coords: Vec<u64>) -> Result<Self, SlpError> {
        if prime < 3 || prime % 2 == 0 || !arith::is_prime_u64(prime) {
            return Err(SlpError::BadModulus(prime));
        }
        let coords = coords.into_iter().map(|c| c % prime).collect();
        Ok(RingPoint::ModP { prime, coords })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingValue {
    Integer(BigInt),
    Rational(BigRational),
    ModP(u64),
}

/// Renders a program in the line-oriented text format:
/// `arity <n>` followed by one `%<pos> = <op> %<i> %<j>` line per
/// instruction. `parse_slp` inverts this exactly.
pub fn format_slp(slp: &Slp) -> String {
    let mut out = format!("arity {}", slp.arity());
    for (i, ins) in slp.body().iter().enumerate() {
        out.push('\n');
        out.push_str(&format!(
            "%{} = {} %{} %{}",
            slp.arity() + 1 + i,
            ins.kind.mnemonic(),
            ins.left,
            ins.right
        ));
    }
    out
}

pub fn parse_slp(text: &str) -> Result<Slp, SlpError> {
    let syntax = |line: usize, message: &str| SlpError::Syntax { line, message: message.into() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_no, header) = lines.next().ok_or_else(|| syntax(1, "empty program"))?;
    let arity = header
        .strip_prefix("arity ")
        .and_then(|rest| rest.trim().parse::<usize>().ok())
        .ok_or_else(|| syntax(header_no, "expected `arity <n>`"))?;

    let mut body = Vec::new();
    for (line_no, line) in lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| syntax(line_no, "expected `%<pos> = <op> %<i> %<j>`"))?;
        let pos = parse_position(lhs.trim())
            .ok_or_else(|| syntax(line_no, "left-hand side must be a %-position"))?;
        let expected = arity + 1 + body.len();
        if pos != expected {
            return Err(syntax(line_no, &format!("expected position %{expected}")));
        }
        let mut parts = rhs.split_whitespace();
        let kind = match parts.next() {
            Some("add") => OpKind::Add,
            Some("sub") => OpKind::Sub,
            Some("mul") => OpKind::Mul,
            _ => return Err(syntax(line_no, "operation must be add, sub or mul")),
        };
        let left = parts
            .next()
            .and_then(parse_position)
            .ok_or_else(|| syntax(line_no, "missing left operand"))?;
        let right = parts
            .next()
            .and_then(parse_position)
            .ok_or_else(|| syntax(line_no, "missing right operand"))?;
        if parts.next().is_some() {
            return Err(syntax(line_no, "trailing tokens"));
        }
        body.push(Instruction::new(kind, left, right));
    }
    Slp::new(arity, body)
}

fn parse_position(token: &str) -> Option<usize> {
    token.strip_prefix('%')?.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_squared_minus_one() -> Slp {
        Slp::new(
            1,
            vec![Instruction::new(OpKind::Mul, 1, 1), Instruction::new(OpKind::Sub, 2, 0)],
        )
        .unwrap()
    }

    fn x_plus_one() -> Slp {
        Slp::new(1, vec![Instruction::new(OpKind::Add, 1, 0)]).unwrap()
    }

    #[test]
    fn validates_well_formed_program() {
        let slp = x_squared_minus_one();
        assert_eq!(slp.len(), 3);
    }

    #[test]
    fn bare_program_has_length_arity() {
        let slp = Slp::bare(1);
        assert_eq!(slp.len(), 1);
        assert_eq!(slp.eval_int(&[BigInt::from(42)]).unwrap(), BigInt::from(42));
    }

    #[test]
    fn rejects_forward_reference() {
        let err = Slp::new(1, vec![Instruction::new(OpKind::Add, 3, 0)]).unwrap_err();
        assert_eq!(err, SlpError::ForwardReference { position: 2, index: 3 });
    }

    #[test]
    fn rejects_self_reference() {
        let err = Slp::new(1, vec![Instruction::new(OpKind::Mul, 2, 1)]).unwrap_err();
        assert!(matches!(err, SlpError::ForwardReference { position: 2, index: 2 }));
    }

    #[test]
    fn evaluates_over_integers_and_mod_p() {
        let slp = x_squared_minus_one();
        assert_eq!(slp.eval_int(&[BigInt::from(3)]).unwrap(), BigInt::from(8));
        assert_eq!(slp.eval_mod(7, &[3]).unwrap(), 1);
        let point = RingPoint::mod_p(7, vec![3]).unwrap();
        assert_eq!(slp.eval(&point).unwrap(), RingValue::ModP(1));
    }

    #[test]
    fn eval_rejects_wrong_point_length() {
        let slp = x_squared_minus_one();
        let err = slp.eval_int(&[BigInt::from(1), BigInt::from(2)]).unwrap_err();
        assert_eq!(err, SlpError::ArityMismatch { expected: 1, found: 2 });
    }

    #[test]
    fn mod_p_constructor_rejects_composites_and_two() {
        assert!(RingPoint::mod_p(2, vec![]).is_err());
        assert!(RingPoint::mod_p(91, vec![]).is_err());
        assert!(RingPoint::mod_p(61, vec![]).is_ok());
    }

    #[test]
    fn expands_x_squared_minus_one() {
        let poly = x_squared_minus_one().expand_to_polynomial(16).unwrap();
        let expected = SparsePoly::from_terms(
            1,
            vec![(vec![2], BigInt::one()), (vec![0], BigInt::from(-1))],
        )
        .unwrap();
        assert_eq!(poly, expected);
    }

    #[test]
    fn expands_x_fourth_minus_one() {
        let slp = Slp::new(
            1,
            vec![
                Instruction::new(OpKind::Mul, 1, 1),
                Instruction::new(OpKind::Mul, 2, 2),
                Instruction::new(OpKind::Sub, 3, 0),
            ],
        )
        .unwrap();
        let poly = slp.expand_to_polynomial(16).unwrap();
        let expected = SparsePoly::from_terms(
            1,
            vec![(vec![4], BigInt::one()), (vec![0], BigInt::from(-1))],
        )
        .unwrap();
        assert_eq!(poly, expected);
    }

    #[test]
    fn term_cap_reports_offending_line() {
        // (x+1)^(2^4) by repeated squaring; the oracle below counts the
        // terms of each square directly, so the failing line is derived
        // rather than guessed.
        let mut body = vec![Instruction::new(OpKind::Add, 1, 0)];
        for i in 0..4 {
            body.push(Instruction::new(OpKind::Mul, 2 + i, 2 + i));
        }
        let slp = Slp::new(1, body).unwrap();
        let cap = 10;
        let mut expected_line = None;
        for j in 0..=4usize {
            let terms = (1usize << j) + 1; // (x+1)^(2^j) is dense
            if terms > cap {
                expected_line = Some(2 + j);
                break;
            }
        }
        let err = slp.expand_to_polynomial(cap).unwrap_err();
        assert_eq!(err, SlpError::TermCapExceeded { line: expected_line.unwrap() });
    }

    #[test]
    fn repeated_squaring_stays_sparse() {
        // x^(2^20) has two intermediate terms per line, so a tiny cap is fine.
        let mut body = Vec::new();
        for i in 0..20 {
            body.push(Instruction::new(OpKind::Mul, 1 + i, 1 + i));
        }
        let slp = Slp::new(1, body).unwrap();
        let poly = slp.expand_to_polynomial(10).unwrap();
        assert_eq!(poly.num_terms(), 1);
    }

    #[test]
    fn compose_matches_pointwise_evaluation() {
        let outer = x_squared_minus_one();
        let inner = x_plus_one();
        let composed = outer.compose(std::slice::from_ref(&inner)).unwrap();
        for t in -3i64..=3 {
            let t = BigInt::from(t);
            let inner_val = inner.eval_int(std::slice::from_ref(&t)).unwrap();
            let expected = outer.eval_int(&[inner_val]).unwrap();
            assert_eq!(composed.eval_int(&[t]).unwrap(), expected);
        }
    }

    #[test]
    fn compose_with_identity_is_pointwise_identity() {
        let g = x_squared_minus_one();
        let outer_identity = Slp::bare(1);
        let composed = outer_identity.compose(std::slice::from_ref(&g)).unwrap();
        let inner_identity = g.compose(&[Slp::bare(1)]).unwrap();
        for t in -5i64..=5 {
            let t = [BigInt::from(t)];
            assert_eq!(composed.eval_int(&t).unwrap(), g.eval_int(&t).unwrap());
            assert_eq!(inner_identity.eval_int(&t).unwrap(), g.eval_int(&t).unwrap());
        }
    }

    #[test]
    fn compose_rejects_wrong_inner_count() {
        let err = x_squared_minus_one().compose(&[]).unwrap_err();
        assert_eq!(err, SlpError::ArityMismatch { expected: 1, found: 0 });
    }

    #[test]
    fn compose_length_within_bound() {
        let outer = x_squared_minus_one();
        let inner = x_plus_one();
        let composed = outer.compose(std::slice::from_ref(&inner)).unwrap();
        assert!(composed.len() <= inner.len() + outer.body().len());
    }

    #[test]
    fn product_of_two_linear_factors() {
        let x_minus_1 = Slp::new(1, vec![Instruction::new(OpKind::Sub, 1, 0)]).unwrap();
        let two = Instruction::new(OpKind::Add, 0, 0);
        let x_minus_2 =
            Slp::new(1, vec![two, Instruction::new(OpKind::Sub, 1, 2)]).unwrap();
        let prod = product(&[x_minus_1.clone(), x_minus_2.clone()]).unwrap();
        for t in 0i64..=3 {
            let t = [BigInt::from(t)];
            let expected = x_minus_1.eval_int(&t).unwrap() * x_minus_2.eval_int(&t).unwrap();
            assert_eq!(prod.eval_int(&t).unwrap(), expected);
        }
        // length = arity + body lengths + (count - 1)
        assert_eq!(prod.len(), 1 + 1 + 2 + 1);
    }

    #[test]
    fn product_of_single_factor_is_the_factor() {
        let f = x_squared_minus_one();
        assert_eq!(product(std::slice::from_ref(&f)).unwrap(), f);
    }

    #[test]
    fn product_rejects_empty_list() {
        assert_eq!(product(&[]).unwrap_err(), SlpError::EmptyList);
    }

    #[test]
    fn falling_product_vanishes_exactly_on_its_roots() {
        let d = 5u64;
        let factors: Vec<Slp> = (1..=d)
            .map(|c| {
                let mut b = SlpBuilder::new(1);
                let cpos = b.constant(&BigUint::from(c));
                let out = b.push(OpKind::Sub, 1, cpos);
                b.finish(out)
            })
            .collect();
        let prod = product(&factors).unwrap();
        for t in -1i64..=(d as i64 + 1) {
            let value = prod.eval_int(&[BigInt::from(t)]).unwrap();
            if t >= 1 && t <= d as i64 {
                assert!(value.is_zero(), "t = {t}");
            } else {
                assert!(!value.is_zero(), "t = {t}");
            }
        }
    }

    #[test]
    fn builder_constant_chains() {
        let mut b = SlpBuilder::new(1);
        assert_eq!(b.constant(&BigUint::from(1u32)), 0);
        let five = b.constant(&BigUint::from(5u32));
        let five_again = b.constant(&BigUint::from(5u32));
        assert_eq!(five, five_again);
        let slp = b.finish(five);
        assert_eq!(slp.eval_int(&[BigInt::from(9)]).unwrap(), BigInt::from(5));
    }

    #[test]
    fn parse_format_roundtrip() {
        let text = "arity 1\n%2 = mul %1 %1\n%3 = sub %2 %0";
        let slp = parse_slp(text).unwrap();
        assert_eq!(slp, x_squared_minus_one());
        assert_eq!(format_slp(&slp), text);
        let reparsed = parse_slp(&format_slp(&slp)).unwrap();
        assert_eq!(reparsed, slp);
    }

    #[test]
    fn parse_rejects_forward_reference() {
        let err = parse_slp("arity 1\n%2 = mul %5 %1").unwrap_err();
        assert_eq!(err, SlpError::ForwardReference { position: 2, index: 5 });
    }

    #[test]
    fn parse_rejects_bad_header_and_bad_position() {
        assert!(matches!(parse_slp("arty 1"), Err(SlpError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_slp("arity 1\n%3 = add %0 %1"),
            Err(SlpError::Syntax { line: 2, .. })
        ));
    }
}
