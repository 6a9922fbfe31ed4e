//! Polynomials in graphs: `+` is disjoint union, `*` is strong product,
//! natural powers and natural scalar multiples (m-fold disjoint union).
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' NAT)?
//! base   := NAT '*'? base | atom | '(' expr ')'
//! atom   := 'K' NAT | 'E' NAT | 'P' NAT | 'C' NAT
//!         | 'KG(' NAT ',' NAT ')' | 'QK(' NAT ',' NAT ',' NAT ')'
//!         | 'T(' NAT ',' NAT ')' | 'Paley(' NAT ')'
//!         | 'co(' expr ')' | '@' FILEREF
//! ```
//!
//! `^` binds tighter than `*`, which binds tighter than `+`. Coefficients
//! and exponents are naturals >= 1; there is no subtraction. `co()` is only
//! allowed around atoms.

use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::families::{build_atom, GraphAtom};
use crate::graph::{disjoint_union, strong_product, Caps, Graph};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphExpr {
    Atom(GraphAtom),
    Sum(Vec<GraphExpr>),
    Product(Vec<GraphExpr>),
    Power(Box<GraphExpr>, u64),
    Scale(u64, Box<GraphExpr>),
}

/// A monomial of the canonical polynomial form: atoms with exponents, sorted
/// by canonical atom name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(pub Vec<(GraphAtom, u64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_of(&self, atom: &GraphAtom) -> u64 {
        self.0
            .iter()
            .find(|(a, _)| a == atom)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<String, (GraphAtom, u64)> = BTreeMap::new();
        for (a, e) in self.0.iter().chain(other.0.iter()) {
            map.entry(a.name())
                .and_modify(|(_, acc)| *acc += e)
                .or_insert_with(|| (a.clone(), *e));
        }
        Monomial(map.into_values().collect())
    }
}

/// Canonical polynomial: coefficient-monomial pairs in a deterministic
/// order (lexicographic by atom names, then degrees).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<(u64, Monomial)>);

impl Polynomial {
    fn from_terms(terms: Vec<(u64, Monomial)>) -> Result<Polynomial> {
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (c, m) in terms {
            let slot = map.entry(m).or_insert(0);
            *slot = slot
                .checked_add(c)
                .ok_or_else(|| Error::Overflow("polynomial coefficient".into()))?;
        }
        Ok(Polynomial(
            map.into_iter()
                .filter(|&(_, c)| c > 0)
                .map(|(m, c)| (c, m))
                .collect(),
        ))
    }

    fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        Polynomial::from_terms(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut terms = Vec::new();
        for (c1, m1) in &self.0 {
            for (c2, m2) in &other.0 {
                let c = c1
                    .checked_mul(*c2)
                    .ok_or_else(|| Error::Overflow("polynomial coefficient".into()))?;
                terms.push((c, m1.mul(m2)));
            }
        }
        Polynomial::from_terms(terms)
    }

    fn pow(&self, k: u64) -> Result<Polynomial> {
        let mut acc = Polynomial(vec![(1, Monomial::one())]);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Distinct atoms, sorted by canonical name.
    pub fn atoms(&self) -> Vec<GraphAtom> {
        let mut map: BTreeMap<String, GraphAtom> = BTreeMap::new();
        for (_, m) in &self.0 {
            for (a, _) in &m.0 {
                map.entry(a.name()).or_insert_with(|| a.clone());
            }
        }
        map.into_values().collect()
    }

    /// Back to a canonical sum-of-monomials expression.
    pub fn to_expr(&self) -> GraphExpr {
        let terms: Vec<GraphExpr> = self
            .0
            .iter()
            .map(|(c, m)| {
                let factors: Vec<GraphExpr> = m
                    .0
                    .iter()
                    .map(|(a, e)| {
                        if *e == 1 {
                            GraphExpr::Atom(a.clone())
                        } else {
                            GraphExpr::Power(Box::new(GraphExpr::Atom(a.clone())), *e)
                        }
                    })
                    .collect();
                let body = match factors.len() {
                    0 => GraphExpr::Atom(GraphAtom::Complete(1)),
                    1 => factors.into_iter().next().unwrap(),
                    _ => GraphExpr::Product(factors),
                };
                if *c == 1 {
                    body
                } else {
                    GraphExpr::Scale(*c, Box::new(body))
                }
            })
            .collect();
        match terms.len() {
            0 => GraphExpr::Sum(Vec::new()),
            1 => terms.into_iter().next().unwrap(),
            _ => GraphExpr::Sum(terms),
        }
    }

    /// Evaluate the polynomial with exact-value arithmetic.
    pub fn eval_numeric(
        &self,
        assignment: &BTreeMap<String, ExactValue>,
    ) -> Result<ExactValue> {
        let mut total = ExactValue::zero();
        for (c, m) in &self.0 {
            let mut term = ExactValue::from_nat(*c);
            for (a, e) in &m.0 {
                let v = assignment.get(&a.name()).ok_or_else(|| {
                    Error::domain(format!("no value assigned to atom {}", a.name()))
                })?;
                term = term.mul(&v.pow(*e));
            }
            total = total.add(&term);
        }
        Ok(total)
    }
}

impl GraphExpr {
    pub fn atom(a: GraphAtom) -> GraphExpr {
        GraphExpr::Atom(a)
    }

    /// Multinomial expansion to the canonical polynomial (idempotent).
    pub fn expand(&self) -> Result<Polynomial> {
        match self {
            GraphExpr::Atom(a) => Ok(Polynomial(vec![(1, Monomial(vec![(a.clone(), 1)]))])),
            GraphExpr::Sum(terms) => {
                let mut acc = Polynomial(Vec::new());
                for t in terms {
                    acc = acc.add(&t.expand()?)?;
                }
                Ok(acc)
            }
            GraphExpr::Product(factors) => {
                let mut acc = Polynomial(vec![(1, Monomial::one())]);
                for f in factors {
                    acc = acc.mul(&f.expand()?)?;
                }
                Ok(acc)
            }
            GraphExpr::Power(base, k) => base.expand()?.pow(*k),
            GraphExpr::Scale(c, inner) => {
                let p = inner.expand()?;
                let terms: Result<Vec<(u64, Monomial)>> = p
                    .0
                    .into_iter()
                    .map(|(cc, m)| {
                        cc.checked_mul(*c)
                            .map(|c2| (c2, m))
                            .ok_or_else(|| Error::Overflow("polynomial coefficient".into()))
                    })
                    .collect();
                Polynomial::from_terms(terms?)
            }
        }
    }

    /// Build the concrete graph, evaluating the unexpanded tree. Resource
    /// errors name the offending subexpression.
    pub fn evaluate(&self, caps: &Caps) -> Result<Graph> {
        let wrap = |e: Error, expr: &GraphExpr| match e {
            Error::Resource { what, limit, got } => Error::Resource {
                what: format!("{what} while evaluating {expr}"),
                limit,
                got,
            },
            other => other,
        };
        match self {
            GraphExpr::Atom(a) => build_atom(a, caps).map_err(|e| wrap(e, self)),
            GraphExpr::Sum(terms) => {
                let mut graphs = terms.iter().map(|t| t.evaluate(caps));
                let mut acc = graphs
                    .next()
                    .ok_or_else(|| Error::domain("empty sum"))??;
                for g in graphs {
                    acc = disjoint_union(&acc, &g?);
                }
                Ok(acc)
            }
            GraphExpr::Product(factors) => {
                let mut graphs = factors.iter().map(|f| f.evaluate(caps));
                let mut acc = graphs
                    .next()
                    .ok_or_else(|| Error::domain("empty product"))??;
                for g in graphs {
                    acc = strong_product(&acc, &g?, caps).map_err(|e| wrap(e, self))?;
                }
                Ok(acc)
            }
            GraphExpr::Power(base, k) => {
                if *k == 0 {
                    return Err(Error::domain("exponent must be >= 1"));
                }
                let b = base.evaluate(caps)?;
                let mut acc = b.clone();
                for _ in 1..*k {
                    acc = strong_product(&acc, &b, caps).map_err(|e| wrap(e, self))?;
                }
                Ok(acc)
            }
            GraphExpr::Scale(c, inner) => {
                if *c == 0 {
                    return Err(Error::domain("coefficient must be >= 1"));
                }
                let g = inner.evaluate(caps)?;
                let mut acc = g.clone();
                for _ in 1..*c {
                    acc = disjoint_union(&acc, &g);
                }
                Ok(acc)
            }
        }
    }

    /// Evaluate the polynomial numerically with per-atom values assigned by
    /// canonical atom name.
    pub fn evaluate_numeric(
        &self,
        assignment: &BTreeMap<String, ExactValue>,
    ) -> Result<ExactValue> {
        match self {
            GraphExpr::Atom(a) => assignment
                .get(&a.name())
                .cloned()
                .ok_or_else(|| Error::domain(format!("no value assigned to atom {}", a.name()))),
            GraphExpr::Sum(terms) => {
                let mut acc = ExactValue::zero();
                for t in terms {
                    acc = acc.add(&t.evaluate_numeric(assignment)?);
                }
                Ok(acc)
            }
            GraphExpr::Product(factors) => {
                let mut acc = ExactValue::one();
                for f in factors {
                    acc = acc.mul(&f.evaluate_numeric(assignment)?);
                }
                Ok(acc)
            }
            GraphExpr::Power(base, k) => Ok(base.evaluate_numeric(assignment)?.pow(*k)),
            GraphExpr::Scale(c, inner) => {
                Ok(ExactValue::from_nat(*c).mul(&inner.evaluate_numeric(assignment)?))
            }
        }
    }

    /// Canonical sum-of-monomials form.
    pub fn normalize(&self) -> Result<GraphExpr> {
        Ok(self.expand()?.to_expr())
    }

    /// Distinct atoms of the expression.
    pub fn atoms(&self) -> Vec<GraphAtom> {
        let mut map: BTreeMap<String, GraphAtom> = BTreeMap::new();
        fn walk(e: &GraphExpr, map: &mut BTreeMap<String, GraphAtom>) {
            match e {
                GraphExpr::Atom(a) => {
                    map.entry(a.name()).or_insert_with(|| a.clone());
                }
                GraphExpr::Sum(v) | GraphExpr::Product(v) => {
                    v.iter().for_each(|x| walk(x, map))
                }
                GraphExpr::Power(b, _) => walk(b, map),
                GraphExpr::Scale(_, b) => walk(b, map),
            }
        }
        walk(self, &mut map);
        map.into_values().collect()
    }

    /// Top-level summands after expansion; a scale `m*M` contributes the
    /// monomial `M` with multiplicity m.
    pub fn summands(&self) -> Result<Vec<(u64, Monomial)>> {
        Ok(self.expand()?.0)
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // precedence: sum 0, product 1, power/scale 2, atom 3
        fn go(e: &GraphExpr, parent: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let prec = match e {
                GraphExpr::Sum(_) => 0,
                GraphExpr::Product(_) => 1,
                GraphExpr::Scale(..) | GraphExpr::Power(..) => 2,
                GraphExpr::Atom(_) => 3,
            };
            let need_parens = prec < parent;
            if need_parens {
                f.write_str("(")?;
            }
            match e {
                GraphExpr::Atom(a) => write!(f, "{a}")?,
                GraphExpr::Sum(terms) => {
                    for (i, t) in terms.iter().enumerate() {
                        if i > 0 {
                            f.write_str("+")?;
                        }
                        go(t, 1, f)?;
                    }
                }
                GraphExpr::Product(factors) => {
                    for (i, x) in factors.iter().enumerate() {
                        if i > 0 {
                            f.write_str("*")?;
                        }
                        go(x, 2, f)?;
                    }
                }
                GraphExpr::Power(base, k) => {
                    go(base, 3, f)?;
                    write!(f, "^{k}")?;
                }
                GraphExpr::Scale(c, inner) => {
                    write!(f, "{c}*")?;
                    go(inner, 2, f)?;
                }
            }
            if need_parens {
                f.write_str(")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

// ---------------------------------------------------------------------------
// parser

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

/// Parse an expression in the grammar above.
pub fn parse(text: &str) -> Result<GraphExpr> {
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        while self
            .peek()
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a natural number"));
        }
        let text = &self.src[start..self.pos];
        self.skip_ws();
        text.parse::<u64>()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: format!("number {text} does not fit in 64 bits"),
            })
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            GraphExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<GraphExpr> {
        let mut factors = vec![self.factor()?];
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        // hoist scalar coefficients over the whole product: 2*C3 * KG(5,2)
        // means 2*(C3*KG(5,2)) in the commutative semiring
        let mut coeff: u64 = 1;
        let mut rest = Vec::with_capacity(factors.len());
        for fct in factors {
            match fct {
                GraphExpr::Scale(c, inner) => {
                    coeff = coeff
                        .checked_mul(c)
                        .ok_or_else(|| self.err("coefficient overflow"))?;
                    rest.push(*inner);
                }
                other => rest.push(other),
            }
        }
        let body = if rest.len() == 1 {
            rest.pop().unwrap()
        } else {
            GraphExpr::Product(rest)
        };
        Ok(if coeff == 1 {
            body
        } else {
            GraphExpr::Scale(coeff, Box::new(body))
        })
    }

    fn factor(&mut self) -> Result<GraphExpr> {
        let base = self.base()?;
        if self.eat(b'^') {
            let k = self.nat()?;
            if k == 0 {
                return Err(self.err("exponent must be >= 1"));
            }
            Ok(GraphExpr::Power(Box::new(base), k))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<GraphExpr> {
        if self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            let c = self.nat()?;
            if c == 0 {
                return Err(self.err("coefficient must be >= 1"));
            }
            self.eat(b'*');
            let inner = self.base()?;
            return Ok(if c == 1 {
                inner
            } else {
                GraphExpr::Scale(c, Box::new(inner))
            });
        }
        if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        Ok(GraphExpr::Atom(self.atom()?))
    }

    fn atom(&mut self) -> Result<GraphAtom> {
        let start = self.pos;
        let fail = |p: &Parser, what: &str| Error::Parse {
            pos: start,
            msg: format!("expected an atom ({what}), found {:?}", &p.src[start..p.src.len().min(start + 8)]),
        };
        let atom = if self.keyword("KG(") {
            let n = self.nat()?;
            self.expect(b',')?;
            let r = self.nat()?;
            self.expect(b')')?;
            GraphAtom::Kneser(n, r)
        } else if self.keyword("QK(") {
            let n = self.nat()?;
            self.expect(b',')?;
            let k = self.nat()?;
            self.expect(b',')?;
            let q = self.nat()?;
            self.expect(b')')?;
            GraphAtom::QKneser(n, k, q)
        } else if self.keyword("T(") {
            let k = self.nat()?;
            self.expect(b',')?;
            let l = self.nat()?;
            self.expect(b')')?;
            GraphAtom::Tadpole(k, l)
        } else if self.keyword("Paley(") {
            let q = self.nat()?;
            self.expect(b')')?;
            GraphAtom::Paley(q)
        } else if self.keyword("co(") {
            let e = self.expr()?;
            self.expect(b')')?;
            match e {
                GraphExpr::Atom(a) => GraphAtom::Complement(Box::new(a)),
                _ => {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "co() is only allowed around atoms".into(),
                    })
                }
            }
        } else if self.eat(b'@') {
            let s = self.pos;
            while self
                .peek()
                .map(|c| !c.is_ascii_whitespace() && !b"+*^()".contains(&c))
                .unwrap_or(false)
            {
                self.pos += 1;
            }
            if self.pos == s {
                return Err(self.err("expected a file reference after '@'"));
            }
            let file = self.src[s..self.pos].to_string();
            self.skip_ws();
            GraphAtom::Custom(file)
        } else if self.keyword("K") {
            GraphAtom::Complete(self.nat()?)
        } else if self.keyword("E") {
            GraphAtom::Empty(self.nat()?)
        } else if self.keyword("P") {
            GraphAtom::Path(self.nat()?)
        } else if self.keyword("C") {
            GraphAtom::Cycle(self.nat()?)
        } else {
            return Err(fail(self, "K/E/P/C/KG/QK/T/Paley/co/@"));
        };
        atom.validate().map_err(|e| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })?;
        Ok(atom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, ExactValue};

    #[test]
    fn parse_examples() {
        let e = parse("C5 + K1").unwrap();
        assert_eq!(
            e,
            GraphExpr::Sum(vec![
                GraphExpr::Atom(GraphAtom::Cycle(5)),
                GraphExpr::Atom(GraphAtom::Complete(1)),
            ])
        );
        let e = parse("(C5+K1)^2").unwrap();
        assert!(matches!(e, GraphExpr::Power(_, 2)));
        let e = parse("2*C3 * KG(5,2)").unwrap();
        assert_eq!(
            e,
            GraphExpr::Scale(
                2,
                Box::new(GraphExpr::Product(vec![
                    GraphExpr::Atom(GraphAtom::Cycle(3)),
                    GraphExpr::Atom(GraphAtom::Kneser(5, 2)),
                ]))
            )
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse("C5 + + K1").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 5, .. }), "{err}");
        // domain error surfaced from atom validation
        let err = parse("T(2,3)").unwrap_err();
        assert!(err.to_string().contains("k >= 3"));
        assert!(parse("co(C5+K1)").is_err());
        assert!(parse("0*C5").is_err());
        assert!(parse("C5^0").is_err());
    }

    #[test]
    fn binomial_expansion() {
        let e = parse("(C5+K1)^3").unwrap();
        let p = e.expand().unwrap();
        // C5^3 + 3 C5^2 K1 + 3 C5 K1^2 + K1^3
        assert_eq!(p.0.len(), 4);
        let coeffs: Vec<u64> = p.0.iter().map(|(c, _)| *c).collect();
        let mut sorted = coeffs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 3, 3]);
        // idempotent
        assert_eq!(p.to_expr().expand().unwrap(), p);
    }

    #[test]
    fn print_parse_round_trip() {
        for src in [
            "C5+K1",
            "(C5+K1)^2",
            "2*C3*KG(5,2)",
            "C5*co(C5)",
            "T(5,6)^2+Paley(9)",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            let reparsed = parse(&printed).unwrap();
            assert_eq!(e, reparsed, "{src} -> {printed}");
        }
    }

    #[test]
    fn evaluation_matches_graphs() {
        let caps = Caps::default();
        let g = parse("C5*K1").unwrap().evaluate(&caps).unwrap();
        assert_eq!(g.n(), 5);
        let c5 = crate::families::make_cycle(5, &caps).unwrap();
        assert!(g.same_adjacency(&c5));

        let g = parse("C5+co(C5)").unwrap().evaluate(&caps).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 10));

        let g = parse("T(5,6)^2").unwrap().evaluate(&caps).unwrap();
        assert_eq!(g.n(), 121);
    }

    #[test]
    fn numeric_evaluation() {
        let mut assign = BTreeMap::new();
        assign.insert("C5".to_string(), ExactValue::sqrt_nat(5));
        assign.insert("K1".to_string(), ExactValue::one());
        let e = parse("C5+K1").unwrap();
        let v = e.evaluate_numeric(&assign).unwrap();
        assert_eq!(v, ExactValue::surd(rat_int(1), rat_int(1), 5));

        // expansion preserves numeric value exactly within one field
        let e = parse("(C5+K1)^3").unwrap();
        let direct = e.evaluate_numeric(&assign).unwrap();
        let expanded = e.expand().unwrap().eval_numeric(&assign).unwrap();
        assert_eq!(direct, expanded);
    }
}
