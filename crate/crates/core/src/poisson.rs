//! The commutative semiclassical side: `T = ℚ[x,y,z]` with a Poisson bracket
//! derived from a potential, the Brylinski complex, the Koszul complex of
//! `∧dφ`, graded homology tables, and the explicit homology bases of the
//! potential `φ = -x²z`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg::{echelon_rows, parse_rat, rat, rat_string, RatMatrix, SparseVec, Subspace};
use crate::report::{slice_homology, CheckList, HomologyTable};
use crate::{Error, Rat};

/// Exponents `(i, j, k)` of a monomial `x^i y^j z^k`.
pub type Exp3 = (usize, usize, usize);

/// Sparse commutative polynomial in `x, y, z` over `ℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CPoly {
    pub terms: BTreeMap<Exp3, Rat>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn one() -> Self {
        CPoly::monomial((0, 0, 0), Rat::one())
    }

    pub fn monomial(e: Exp3, c: Rat) -> Self {
        let mut p = CPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn var(axis: usize) -> Self {
        let e = match axis {
            0 => (1, 0, 0),
            1 => (0, 1, 0),
            2 => (0, 0, 1),
            _ => panic!("axis out of range"),
        };
        CPoly::monomial(e, Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exp3, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> CPoly {
        if c.is_zero() {
            return CPoly::zero();
        }
        CPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut out = CPoly::zero();
        for (&(a, b, c), u) in &self.terms {
            for (&(d, e, f), v) in &other.terms {
                out.add_term((a + d, b + e, c + f), u * v);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> CPoly {
        let mut out = CPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, axis: usize) -> CPoly {
        let mut out = CPoly::zero();
        for (&(i, j, k), c) in &self.terms {
            match axis {
                0 if i > 0 => out.add_term((i - 1, j, k), c * rat(i as i64)),
                1 if j > 0 => out.add_term((i, j - 1, k), c * rat(j as i64)),
                2 if k > 0 => out.add_term((i, j, k - 1), c * rat(k as i64)),
                0..=2 => {}
                _ => panic!("axis out of range"),
            }
        }
        out
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, j, k)| i + j + k).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ds = self.terms.keys().map(|&(i, j, k)| i + j + k);
        match ds.next() {
            None => true,
            Some(d) => ds.all(|e| e == d),
        }
    }

    /// Largest exponent of `y` over the support; `None` for zero.
    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j, _)| j).max()
    }

    /// Terms whose `y`-exponent equals `j`.
    pub fn y_part(&self, j: usize) -> CPoly {
        CPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, jj, _), _)| jj == j)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = ["x", "y", "z"];
        let mut out = String::new();
        for (i, (&(a, b, c), coeff)) in self.terms.iter().enumerate() {
            let neg = coeff < &Rat::zero();
            let abs = if neg { -coeff.clone() } else { coeff.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            for (e, name) in [a, b, c].into_iter().zip(names) {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            if parts.is_empty() || !abs.is_one() {
                parts.insert(0, rat_string(&abs));
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    /// Parses expressions like `-(x^2)*z`, `2*x*y - 1/2*z^3`, `x y z`.
    /// A slash is only accepted inside rational literals.
    pub fn parse(input: &str) -> Result<CPoly, Error> {
        let mut parser = Parser::new(input)?;
        let poly = parser.parse_expr(0)?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::BadInput("trailing tokens in polynomial".into()));
        }
        Ok(poly)
    }
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Parser {
    fn new(input: &str) -> Result<Self, Error> {
        let mut tokens = Vec::new();
        let chars: Vec<char> = input.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            match chars[i] {
                ' ' | '\t' | '\n' => i += 1,
                '+' => {
                    tokens.push(Tok::Plus);
                    i += 1;
                }
                '-' => {
                    tokens.push(Tok::Minus);
                    i += 1;
                }
                '*' => {
                    tokens.push(Tok::Star);
                    i += 1;
                }
                '^' => {
                    tokens.push(Tok::Caret);
                    i += 1;
                }
                '(' => {
                    tokens.push(Tok::LParen);
                    i += 1;
                }
                ')' => {
                    tokens.push(Tok::RParen);
                    i += 1;
                }
                'x' => {
                    tokens.push(Tok::Var(0));
                    i += 1;
                }
                'y' => {
                    tokens.push(Tok::Var(1));
                    i += 1;
                }
                'z' => {
                    tokens.push(Tok::Var(2));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let mut text: String = chars[start..i].iter().collect();
                    if i < chars.len() && chars[i] == '/' {
                        let mut j = i + 1;
                        while j < chars.len() && chars[j].is_ascii_digit() {
                            j += 1;
                        }
                        if j == i + 1 {
                            return Err(Error::BadInput("`/` without denominator".into()));
                        }
                        text.push('/');
                        text.extend(chars[i + 1..j].iter());
                        i = j;
                    }
                    tokens.push(Tok::Num(parse_rat(&text)?));
                }
                other => {
                    return Err(Error::BadInput(format!("unexpected character `{other}`")));
                }
            }
        }
        Ok(Parser { tokens, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn parse_expr(&mut self, depth: usize) -> Result<CPoly, Error> {
        let mut acc = CPoly::zero();
        let mut sign = Rat::one();
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -sign;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let term = self.parse_term()?;
            acc = acc.add(&term.scale(&sign));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -Rat::one();
                }
                Some(Tok::RParen) if depth > 0 => return Ok(acc),
                None => return Ok(acc),
                Some(t) => {
                    return Err(Error::BadInput(format!("unexpected token {t:?}")));
                }
            }
        }
    }

    fn parse_term(&mut self) -> Result<CPoly, Error> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.parse_factor()?);
                }
                // juxtaposition: `2x`, `x y`, `3(x+z)`
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.parse_factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<CPoly, Error> {
        let mut base = match self.peek().cloned() {
            Some(Tok::Num(c)) => {
                self.pos += 1;
                CPoly::monomial((0, 0, 0), c)
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                CPoly::var(v)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_expr(1)?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::BadInput("missing `)`".into()));
                }
                self.pos += 1;
                inner
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                return Ok(self.parse_factor()?.scale(&-Rat::one()));
            }
            other => {
                return Err(Error::BadInput(format!("unexpected token {other:?}")));
            }
        };
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(c)) if c.is_integer() && c >= Rat::zero() => {
                    self.pos += 1;
                    let k: usize = (*c.numer())
                        .clone()
                        .try_into()
                        .map_err(|_| Error::BadInput("exponent too large".into()))?;
                    base = base.pow(k);
                }
                _ => return Err(Error::BadInput("`^` needs a natural exponent".into())),
            }
        }
        Ok(base)
    }
}

/// Parses the exponent-map JSON form `[[i, j, k, "c"], …]`.
pub fn cpoly_from_json(value: &serde_json::Value) -> Result<CPoly, Error> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::BadInput("expected a JSON array of terms".into()))?;
    let mut out = CPoly::zero();
    for row in rows {
        let entry = row
            .as_array()
            .filter(|r| r.len() == 4)
            .ok_or_else(|| Error::BadInput("each term must be [i, j, k, \"coeff\"]".into()))?;
        let mut exps = [0usize; 3];
        for (slot, item) in exps.iter_mut().zip(entry.iter()) {
            *slot = item
                .as_u64()
                .ok_or_else(|| Error::BadInput("exponents must be naturals".into()))?
                as usize;
        }
        let coeff = entry[3]
            .as_str()
            .ok_or_else(|| Error::BadInput("coefficient must be a rational string".into()))?;
        out.add_term((exps[0], exps[1], exps[2]), parse_rat(coeff)?);
    }
    Ok(out)
}

/// Inverse of [`cpoly_from_json`]; coefficients render as `"p/q"` strings.
pub fn cpoly_to_json(p: &CPoly) -> serde_json::Value {
    serde_json::Value::Array(
        p.terms
            .iter()
            .map(|(&(i, j, k), c)| {
                serde_json::json!([i, j, k, rat_string(c)])
            })
            .collect(),
    )
}

/// Triple of polynomials; read as a 1-form `F₁dx+F₂dy+F₃dz`, a 2-form
/// `F₁dy∧dz+F₂dz∧dx+F₃dx∧dy`, or a vector field depending on context.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vec3(pub [CPoly; 3]);

impl Vec3 {
    pub fn zero() -> Self {
        Vec3::default()
    }

    pub fn new(a: CPoly, b: CPoly, c: CPoly) -> Self {
        Vec3([a, b, c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(CPoly::is_zero)
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[0].add(&other.0[0]),
            self.0[1].add(&other.0[1]),
            self.0[2].add(&other.0[2]),
        ])
    }

    pub fn sub(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[0].sub(&other.0[0]),
            self.0[1].sub(&other.0[1]),
            self.0[2].sub(&other.0[2]),
        ])
    }

    pub fn scale(&self, c: &Rat) -> Vec3 {
        Vec3([self.0[0].scale(c), self.0[1].scale(c), self.0[2].scale(c)])
    }

    pub fn scale_poly(&self, f: &CPoly) -> Vec3 {
        Vec3([f.mul(&self.0[0]), f.mul(&self.0[1]), f.mul(&self.0[2])])
    }

    pub fn dot(&self, other: &Vec3) -> CPoly {
        let mut out = CPoly::zero();
        for i in 0..3 {
            out = out.add(&self.0[i].mul(&other.0[i]));
        }
        out
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        let a = &self.0;
        let b = &other.0;
        Vec3([
            a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
            a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
            a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
        ])
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().filter_map(CPoly::degree).max()
    }
}

pub fn grad(f: &CPoly) -> Vec3 {
    Vec3([f.partial(0), f.partial(1), f.partial(2)])
}

pub fn div(f: &Vec3) -> CPoly {
    f.0[0]
        .partial(0)
        .add(&f.0[1].partial(1))
        .add(&f.0[2].partial(2))
}

pub fn curl(f: &Vec3) -> Vec3 {
    Vec3([
        f.0[2].partial(1).sub(&f.0[1].partial(2)),
        f.0[0].partial(2).sub(&f.0[2].partial(0)),
        f.0[1].partial(0).sub(&f.0[0].partial(1)),
    ])
}

/// Homogeneous Poisson potential with cached gradient. The Jacobian bracket
/// `{F,G} = ∇φ·(∇F×∇G)` reproduces `{x,y} = φ_z`, `{y,z} = φ_x`,
/// `{z,x} = φ_y`; the constructor verifies Jacobi on the generators.
#[derive(Clone, Debug)]
pub struct PoissonPotential {
    pub phi: CPoly,
    pub grad_phi: Vec3,
}

impl PoissonPotential {
    pub fn new(phi: CPoly) -> Result<Self, Error> {
        if !phi.is_homogeneous() {
            return Err(Error::Precondition("potential must be homogeneous".into()));
        }
        let pp = PoissonPotential {
            grad_phi: grad(&phi),
            phi,
        };
        if !jacobi_check(&pp) {
            return Err(Error::Precondition("Jacobi identity fails".into()));
        }
        Ok(pp)
    }

    /// The potential of the Jordan-type semiclassical limit, `φ = -x²z`.
    pub fn jordan() -> Self {
        PoissonPotential::new(CPoly::monomial((2, 0, 1), rat(-1))).expect("valid potential")
    }

    /// `φ_q = (1 - q⁻¹)·xyz`, the quantum-type potential.
    pub fn quantum(q: &Rat) -> Result<Self, Error> {
        if q.is_zero() {
            return Err(Error::BadInput("q must be nonzero".into()));
        }
        let c = Rat::one() - q.recip();
        PoissonPotential::new(CPoly::monomial((1, 1, 1), c))
    }

    pub fn bracket(&self, f: &CPoly, g: &CPoly) -> CPoly {
        self.grad_phi.dot(&grad(f).cross(&grad(g)))
    }
}

/// `{x,{y,z}} + {y,{z,x}} + {z,{x,y}} = 0`.
pub fn jacobi_check(pp: &PoissonPotential) -> bool {
    let x = CPoly::var(0);
    let y = CPoly::var(1);
    let z = CPoly::var(2);
    pp.bracket(&x, &pp.bracket(&y, &z))
        .add(&pp.bracket(&y, &pp.bracket(&z, &x)))
        .add(&pp.bracket(&z, &pp.bracket(&x, &y)))
        .is_zero()
}

/// Chain of the Poisson (or `∧dφ`) complex under the standard
/// identifications `Ω⁰ ≅ Ω³ ≅ T`, `Ω¹ ≅ Ω² ≅ T³`.
#[derive(Clone, Debug, PartialEq)]
pub enum PChain {
    C0(CPoly),
    C1(Vec3),
    C2(Vec3),
    C3(CPoly),
}

impl PChain {
    pub fn p(&self) -> usize {
        match self {
            PChain::C0(_) => 0,
            PChain::C1(_) => 1,
            PChain::C2(_) => 2,
            PChain::C3(_) => 3,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PChain::C0(f) | PChain::C3(f) => f.is_zero(),
            PChain::C1(v) | PChain::C2(v) => v.is_zero(),
        }
    }

    /// Internal degree: coefficient degree plus the form weight `p`.
    /// `None` for the zero chain.
    pub fn internal_degree(&self) -> Option<usize> {
        let coeff = match self {
            PChain::C0(f) | PChain::C3(f) => f.degree(),
            PChain::C1(v) | PChain::C2(v) => v.degree(),
        };
        coeff.map(|c| c + self.p())
    }
}

/// Brylinski boundary `δ_p`, `p ∈ {1,2,3}`:
/// `δ₁(F) = ∇φ·(∇×F)`, `δ₂(F) = -∇(F·∇φ) + Div(F)∇φ`, `δ₃(F) = -∇F×∇φ`.
pub fn delta(pp: &PoissonPotential, chain: &PChain) -> PChain {
    match chain {
        PChain::C0(_) => panic!("delta is undefined on 0-chains"),
        PChain::C1(f) => PChain::C0(pp.grad_phi.dot(&curl(f))),
        PChain::C2(f) => {
            let first = grad(&f.dot(&pp.grad_phi)).scale(&-Rat::one());
            let second = pp.grad_phi.scale_poly(&div(f));
            PChain::C1(first.add(&second))
        }
        PChain::C3(f) => PChain::C2(grad(f).cross(&pp.grad_phi).scale(&-Rat::one())),
    }
}

/// Multiplication by `dφ` in the Koszul complex of `φ`, `p ∈ {0,1,2}`:
/// `F ↦ F·∇φ`, `F ↦ F×∇φ`, `F ↦ F·∇φ` under the standard identifications.
pub fn wedge_dphi(pp: &PoissonPotential, chain: &PChain) -> PChain {
    match chain {
        PChain::C0(f) => PChain::C1(pp.grad_phi.scale_poly(f)),
        PChain::C1(f) => PChain::C2(f.cross(&pp.grad_phi)),
        PChain::C2(f) => PChain::C3(f.dot(&pp.grad_phi)),
        PChain::C3(_) => panic!("wedge with dφ is undefined on 3-chains"),
    }
}

/// Monomial exponents of total degree `d` in ascending tuple order.
pub fn monomials_of_degree(d: usize) -> Vec<Exp3> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            out.push((i, j, d - i - j));
        }
    }
    out
}

pub fn t_dim(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

pub fn chain_slice_dim(p: usize, d: usize) -> usize {
    if d < p {
        return 0;
    }
    let base = t_dim(d - p);
    if p == 0 || p == 3 {
        base
    } else {
        3 * base
    }
}

/// Coordinates of a homogeneous chain inside its `(p, d)` slice. Scalar
/// chains use the monomial enumeration directly; vector chains use three
/// stacked blocks.
pub fn chain_coords(chain: &PChain, d: usize) -> SparseVec {
    let p = chain.p();
    assert!(d >= p, "internal degree below form weight");
    let c = d - p;
    let monoms = monomials_of_degree(c);
    let index: BTreeMap<Exp3, usize> = monoms.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut out = SparseVec::new();
    let mut put = |poly: &CPoly, block: usize| {
        for (e, v) in &poly.terms {
            out.insert(block * monoms.len() + index[e], v.clone());
        }
    };
    match chain {
        PChain::C0(f) | PChain::C3(f) => put(f, 0),
        PChain::C1(v) | PChain::C2(v) => {
            for (block, f) in v.0.iter().enumerate() {
                put(f, block);
            }
        }
    }
    out
}

/// Inverse of [`chain_coords`].
pub fn chain_from_coords(p: usize, d: usize, coords: &SparseVec) -> PChain {
    let c = d - p;
    let monoms = monomials_of_degree(c);
    let mut polys = [CPoly::zero(), CPoly::zero(), CPoly::zero()];
    for (&idx, v) in coords {
        polys[idx / monoms.len()].add_term(monoms[idx % monoms.len()], v.clone());
    }
    match p {
        0 => PChain::C0(polys[0].clone()),
        1 => PChain::C1(Vec3(polys)),
        2 => PChain::C2(Vec3(polys)),
        3 => PChain::C3(polys[0].clone()),
        _ => panic!("p out of range"),
    }
}

fn basis_chains(p: usize, d: usize) -> Vec<PChain> {
    if d < p {
        return Vec::new();
    }
    let monoms = monomials_of_degree(d - p);
    let blocks = if p == 0 || p == 3 { 1 } else { 3 };
    let mut out = Vec::new();
    for block in 0..blocks {
        for &e in &monoms {
            let m = CPoly::monomial(e, Rat::one());
            let mut v = Vec3::zero();
            v.0[block] = m.clone();
            out.push(match p {
                0 => PChain::C0(m),
                3 => PChain::C3(m),
                1 => PChain::C1(v),
                2 => PChain::C2(v),
                _ => unreachable!(),
            });
        }
    }
    out
}

/// Matrix of `δ_p` on the internal-degree-`d` slice (columns = domain).
pub fn delta_matrix(pp: &PoissonPotential, p: usize, d: usize) -> RatMatrix {
    assert!((1..=3).contains(&p));
    let domain = basis_chains(p, d);
    let mut m = RatMatrix::new(chain_slice_dim(p - 1, d), domain.len());
    for (col, chain) in domain.iter().enumerate() {
        let image = delta(pp, chain);
        for (row, v) in chain_coords(&image, d) {
            m.set(row, col, v);
        }
    }
    m
}

/// Matrix of `∧dφ : Ω^p_d → Ω^{p+1}_{d+3}` (columns = domain).
pub fn wedge_matrix(pp: &PoissonPotential, p: usize, d: usize) -> RatMatrix {
    assert!(p <= 2);
    let domain = basis_chains(p, d);
    let mut m = RatMatrix::new(chain_slice_dim(p + 1, d + 3), domain.len());
    for (col, chain) in domain.iter().enumerate() {
        let image = wedge_dphi(pp, chain);
        for (row, v) in chain_coords(&image, d + 3) {
            m.set(row, col, v);
        }
    }
    m
}

/// Poisson homology dimensions `HP_p(T)_d` for `p ≤ 3`, `d ≤ max_degree`.
pub fn hp_table(pp: &PoissonPotential, max_degree: usize, witnesses: bool) -> HomologyTable {
    let mut table = HomologyTable::default();
    for p in 0..=3usize {
        for d in p..=max_degree {
            let out = if p == 0 {
                RatMatrix::new(0, chain_slice_dim(0, d))
            } else {
                delta_matrix(pp, p, d)
            };
            let inn = if p == 3 {
                RatMatrix::new(chain_slice_dim(3, d), 0)
            } else {
                delta_matrix(pp, p + 1, d)
            };
            let (dim, wit) = slice_homology(&out, &inn, witnesses);
            table.set(p, d, dim);
            if witnesses {
                table.witnesses.insert((p, d), wit);
            }
        }
    }
    table
}

/// Homology `H^φ_p(T)_d` of the Koszul complex `(Ω^•, ∧dφ)` per internal
/// degree.
pub fn hphi_table(pp: &PoissonPotential, max_degree: usize) -> HomologyTable {
    let mut table = HomologyTable::default();
    for p in 0..=3usize {
        for d in p..=max_degree {
            let out = if p == 3 {
                RatMatrix::new(0, chain_slice_dim(3, d))
            } else {
                wedge_matrix(pp, p, d)
            };
            let inn = if p == 0 || d < 3 {
                RatMatrix::new(chain_slice_dim(p, d), 0)
            } else {
                wedge_matrix(pp, p - 1, d - 3)
            };
            let (dim, _) = slice_homology(&out, &inn, false);
            table.set(p, d, dim);
        }
    }
    table
}

/// Verifies `δ_p ∘ δ_{p+1} = 0` and `(∧dφ)² = 0` on every slice `d ≤ D`.
pub fn complexes_square_to_zero(pp: &PoissonPotential, max_degree: usize) -> bool {
    for d in 0..=max_degree {
        for p in 1..=2usize {
            if d > p {
                let outer = delta_matrix(pp, p, d);
                let inner = delta_matrix(pp, p + 1, d);
                if !outer.mul(&inner).is_zero() {
                    return false;
                }
            }
        }
        for p in 0..=1usize {
            if d >= p {
                let first = wedge_matrix(pp, p, d);
                let second = wedge_matrix(pp, p + 1, d + 3);
                if !second.mul(&first).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Explicit bases for φ = -x²z
// ---------------------------------------------------------------------------

/// The named homology-basis families of the potential `φ = -x²z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Hp0,
    Hp1,
    Hp2,
    Hp3,
    Hphi1,
    Hphi2,
    Hphi3,
    CurlQuotient,
}

pub const ALL_FAMILIES: [Family; 8] = [
    Family::Hp0,
    Family::Hp1,
    Family::Hp2,
    Family::Hp3,
    Family::Hphi1,
    Family::Hphi2,
    Family::Hphi3,
    Family::CurlQuotient,
];

impl Family {
    pub fn parse(name: &str) -> Result<Family, Error> {
        Ok(match name {
            "HP0" => Family::Hp0,
            "HP1" => Family::Hp1,
            "HP2" => Family::Hp2,
            "HP3" => Family::Hp3,
            "Hphi1" => Family::Hphi1,
            "Hphi2" => Family::Hphi2,
            "Hphi3" => Family::Hphi3,
            "curl-quotient" => Family::CurlQuotient,
            other => return Err(Error::BadInput(format!("unknown family `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Hp0 => "HP0",
            Family::Hp1 => "HP1",
            Family::Hp2 => "HP2",
            Family::Hp3 => "HP3",
            Family::Hphi1 => "Hphi1",
            Family::Hphi2 => "Hphi2",
            Family::Hphi3 => "Hphi3",
            Family::CurlQuotient => "curl-quotient",
        }
    }
}

fn mono(i: usize, j: usize, k: usize) -> CPoly {
    CPoly::monomial((i, j, k), Rat::one())
}

fn x2z_pow(k: usize) -> CPoly {
    mono(2 * k, 0, k)
}

/// `A_k = (x²z)^k (xz, 0, -x²)`, internal degree `3k+3`.
pub fn hp1_a(k: usize) -> PChain {
    let v = Vec3::new(mono(1, 0, 1), CPoly::zero(), mono(2, 0, 0).scale(&rat(-1)));
    PChain::C1(v.scale_poly(&x2z_pow(k)))
}

/// `B_m = z^m (z, 0, -x)`, internal degree `m+2`: the `ℂ[z]`-indexed
/// family, complete from its constant member. The `m = 0` element
/// `(z, 0, -x)` has nonzero curl, so it is not a gradient, and degree
/// reasons rule out an `H∇φ` part: it is a genuine class.
pub fn hp1_b(m: usize) -> PChain {
    let v = Vec3::new(mono(0, 0, 1), CPoly::zero(), mono(1, 0, 0).scale(&rat(-1)));
    PChain::C1(v.scale_poly(&mono(0, 0, m)))
}

/// `u_{n,k} = ((2n+3)yz, -3k·xz, (-2n+3(k-1))·xy)·y^{k-1}z^{n+1-k}`,
/// `n ≥ 0`, `1 ≤ k ≤ n+1`; internal degree `n+3`.
pub fn hp1_u(n: usize, k: usize) -> PChain {
    assert!((1..=n + 1).contains(&k), "u-family parameter out of range");
    let head = Vec3::new(
        mono(0, 1, 1).scale(&rat(2 * n as i64 + 3)),
        mono(1, 0, 1).scale(&rat(-3 * k as i64)),
        mono(1, 1, 0).scale(&rat(-2 * (n as i64) + 3 * (k as i64 - 1))),
    );
    PChain::C1(head.scale_poly(&mono(0, k - 1, n + 1 - k)))
}

/// `v_{m,s} = (0, s·y^{s-1}z^{m-s}, (m-s)·y^s z^{m-1-s})`, `m ≥ 1`,
/// `0 ≤ s ≤ m`; internal degree `m`.
pub fn hp1_v(m: usize, s: usize) -> PChain {
    assert!(m >= 1 && s <= m, "v-family parameter out of range");
    let second = if s >= 1 {
        mono(0, s - 1, m - s).scale(&rat(s as i64))
    } else {
        CPoly::zero()
    };
    let third = if m - s >= 1 {
        mono(0, s, m - 1 - s).scale(&rat((m - s) as i64))
    } else {
        CPoly::zero()
    };
    PChain::C1(Vec3::new(CPoly::zero(), second, third))
}

/// `w_p = (y^p, p·xy^{p-1}, 0)`, internal degree `p+1`.
pub fn hp1_w(p: usize) -> PChain {
    let second = if p >= 1 {
        mono(1, p - 1, 0).scale(&rat(p as i64))
    } else {
        CPoly::zero()
    };
    PChain::C1(Vec3::new(mono(0, p, 0), second, CPoly::zero()))
}

/// `C_r = (x²z)^r (x, y, z)`, internal degree `3r+3`.
pub fn hp2_c(r: usize) -> PChain {
    let e = Vec3::new(mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1));
    PChain::C2(e.scale_poly(&x2z_pow(r)))
}

/// `D_s = x(x²z)^s (0, 1, 0)`, internal degree `3s+3`.
pub fn hp2_d(s: usize) -> PChain {
    PChain::C2(Vec3::new(
        CPoly::zero(),
        mono(1, 0, 0).mul(&x2z_pow(s)),
        CPoly::zero(),
    ))
}

/// `E_t = z^t (0, 1, 0)`, internal degree `t+2`: the `ℂ[z]`-indexed
/// 2-form family, complete from its constant member. `δ₂(0,1,0) = 0`
/// because `φ_y = 0`, and no 3-chains exist below internal degree 3, so
/// the `t = 0` element is a genuine class.
pub fn hp2_e(t: usize) -> PChain {
    PChain::C2(Vec3::new(CPoly::zero(), mono(0, 0, t), CPoly::zero()))
}

/// `o_{n,k} = ((k+1)x, (2(n-k)+1)y, -2(k+1)z)·y^k z^{n-k}`, `0 ≤ k ≤ n`;
/// internal degree `n+3`.
pub fn hp2_o(n: usize, k: usize) -> PChain {
    assert!(k <= n, "o-family parameter out of range");
    let head = Vec3::new(
        mono(1, 0, 0).scale(&rat(k as i64 + 1)),
        mono(0, 1, 0).scale(&rat(2 * (n - k) as i64 + 1)),
        mono(0, 0, 1).scale(&rat(-2 * (k as i64 + 1))),
    );
    PChain::C2(head.scale_poly(&mono(0, k, n - k)))
}

/// `(x²z)^k` as a 3-chain, internal degree `3k+3`.
pub fn hp3_phi(k: usize) -> PChain {
    PChain::C3(x2z_pow(k))
}

/// All elements of a family with internal degree `≤ max_degree`.
pub fn family_elements(family: Family, max_degree: usize) -> Vec<PChain> {
    let dmax = max_degree;
    let mut out = Vec::new();
    match family {
        Family::Hp0 => {
            // x·ℂ[y] ⊕ ℂ[y,z]
            for d in 0..=dmax {
                if d >= 1 {
                    out.push(PChain::C0(mono(1, d - 1, 0)));
                }
                for j in 0..=d {
                    out.push(PChain::C0(mono(0, j, d - j)));
                }
            }
        }
        Family::Hp1 => {
            for k in 0..=dmax / 3 {
                out.push(hp1_a(k));
            }
            if dmax >= 2 {
                for m in 0..=dmax - 2 {
                    out.push(hp1_b(m));
                }
            }
            if dmax >= 3 {
                for n in 0..=dmax - 3 {
                    for k in 1..=n + 1 {
                        out.push(hp1_u(n, k));
                    }
                }
            }
            for m in 1..=dmax {
                for s in 0..=m {
                    out.push(hp1_v(m, s));
                }
            }
            for p in 0..dmax {
                out.push(hp1_w(p));
            }
        }
        Family::Hp2 => {
            for r in 0..=dmax / 3 {
                out.push(hp2_c(r));
                out.push(hp2_d(r));
            }
            if dmax >= 2 {
                for t in 0..=dmax - 2 {
                    out.push(hp2_e(t));
                }
            }
            if dmax >= 3 {
                for n in 0..=dmax - 3 {
                    for k in 0..=n {
                        out.push(hp2_o(n, k));
                    }
                }
            }
        }
        Family::Hp3 => {
            for k in 0..=dmax / 3 {
                out.push(hp3_phi(k));
            }
        }
        Family::Hphi1 => {
            // ℂ[y,z]·(2z dx + x dz)
            let gen = Vec3::new(mono(0, 0, 1).scale(&rat(2)), CPoly::zero(), mono(1, 0, 0));
            for d in 2..=dmax {
                for j in 0..=(d - 2) {
                    out.push(PChain::C1(gen.scale_poly(&mono(0, j, d - 2 - j))));
                }
            }
        }
        Family::Hphi2 => {
            // ℂ[y,z]·(x dz + 2z dx)∧dy = ℂ[y,z]·(-x, 0, 2z), plus
            // (x·ℂ[y] ⊕ ℂ[y,z])·dz∧dx
            let gen = Vec3::new(
                mono(1, 0, 0).scale(&rat(-1)),
                CPoly::zero(),
                mono(0, 0, 1).scale(&rat(2)),
            );
            for d in 3..=dmax {
                for j in 0..=(d - 3) {
                    out.push(PChain::C2(gen.scale_poly(&mono(0, j, d - 3 - j))));
                }
            }
            for d in 2..=dmax {
                let c = d - 2;
                if c >= 1 {
                    out.push(PChain::C2(Vec3::new(
                        CPoly::zero(),
                        mono(1, c - 1, 0),
                        CPoly::zero(),
                    )));
                }
                for j in 0..=c {
                    out.push(PChain::C2(Vec3::new(
                        CPoly::zero(),
                        mono(0, j, c - j),
                        CPoly::zero(),
                    )));
                }
            }
        }
        Family::Hphi3 => {
            // (x·ℂ[y] ⊕ ℂ[y,z]) dx∧dy∧dz
            for d in 3..=dmax {
                let c = d - 3;
                if c >= 1 {
                    out.push(PChain::C3(mono(1, c - 1, 0)));
                }
                for j in 0..=c {
                    out.push(PChain::C3(mono(0, j, c - j)));
                }
            }
        }
        Family::CurlQuotient => {
            for k in 0..=dmax / 3 {
                out.push(hp1_a(k));
            }
            if dmax >= 2 {
                for m in 0..=dmax - 2 {
                    out.push(hp1_b(m));
                }
            }
            if dmax >= 3 {
                for n in 0..=dmax - 3 {
                    for k in 1..=n + 1 {
                        out.push(hp1_u(n, k));
                    }
                }
            }
        }
    }
    out.retain(|c| c.internal_degree().is_some_and(|d| d <= dmax));
    out
}

/// Per-degree count of a family's elements: the listed bases turned into
/// expected homology dimensions.
pub fn family_counts(family: Family, max_degree: usize) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for chain in family_elements(family, max_degree) {
        let d = chain.internal_degree().expect("nonzero basis element");
        *counts.entry(d).or_insert(0) += 1;
    }
    counts
}

/// Span of the denominator `{∇G + H∇φ}` inside the `(1, d)` slice.
pub fn gradient_plus_phi_span(pp: &PoissonPotential, d: usize) -> Subspace {
    let ambient = chain_slice_dim(1, d);
    let mut rows = Vec::new();
    let c = d - 1;
    for e in monomials_of_degree(c + 1) {
        let coords = chain_coords(&PChain::C1(grad(&CPoly::monomial(e, Rat::one()))), d);
        if !coords.is_empty() {
            rows.push(coords);
        }
    }
    if c >= 2 {
        for e in monomials_of_degree(c - 2) {
            let chain = PChain::C1(pp.grad_phi.scale_poly(&CPoly::monomial(e, Rat::one())));
            let coords = chain_coords(&chain, d);
            if !coords.is_empty() {
                rows.push(coords);
            }
        }
    }
    echelon_rows(ambient, rows)
}

/// Dimension of `{F : ∇φ·(∇×F) = 0} / {∇G + H∇φ}` on the `(1, d)` slice.
pub fn curl_quotient_dim(pp: &PoissonPotential, d: usize) -> usize {
    if d < 1 {
        return 0;
    }
    let kernel = crate::linalg::kernel_basis(&delta_matrix(pp, 1, d));
    let denom = gradient_plus_phi_span(pp, d);
    kernel.dim() - denom.dim()
}

/// Dimension of the kernel of `K ↦ ∇K×∇φ` on polynomials of degree `c`; for
/// `φ = -x²z` this must be the degree-`c` slice of `ℂ[φ]`.
pub fn phi_kernel_dim(pp: &PoissonPotential, c: usize) -> usize {
    let monoms = monomials_of_degree(c);
    // ∇K has degree c-1, ∇φ degree 2, so the cross product lands in c+1.
    let target = monomials_of_degree(c + 1);
    let index: BTreeMap<Exp3, usize> = target.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut m = RatMatrix::new(3 * target.len(), monoms.len());
    for (col, &e) in monoms.iter().enumerate() {
        let image = grad(&CPoly::monomial(e, Rat::one())).cross(&pp.grad_phi);
        for (block, poly) in image.0.iter().enumerate() {
            for (&ee, v) in &poly.terms {
                m.set(block * target.len() + index[&ee], col, v.clone());
            }
        }
    }
    crate::linalg::kernel_basis(&m).dim()
}

/// Verifies one family end to end: every listed element is a cycle of the
/// appropriate complex, the classes are linearly independent in the computed
/// homology, and the per-degree count equals the computed dimension.
pub fn verify_family(pp: &PoissonPotential, family: Family, max_degree: usize) -> CheckList {
    let mut checks = CheckList::default();
    let elements = family_elements(family, max_degree);
    let is_hphi = matches!(family, Family::Hphi1 | Family::Hphi2 | Family::Hphi3);
    let p = match family {
        Family::Hp0 => 0,
        Family::Hp1 | Family::CurlQuotient | Family::Hphi1 => 1,
        Family::Hp2 | Family::Hphi2 => 2,
        Family::Hp3 | Family::Hphi3 => 3,
    };

    let mut bad_cycle = Vec::new();
    for chain in &elements {
        let closed = if is_hphi {
            chain.p() == 3 || wedge_dphi(pp, chain).is_zero()
        } else {
            chain.p() == 0 || delta(pp, chain).is_zero()
        };
        if !closed {
            bad_cycle.push(format!("{chain:?}"));
        }
    }
    checks.push(
        format!("{}: listed elements are cycles", family.name()),
        bad_cycle.is_empty(),
        if bad_cycle.is_empty() {
            format!("{} elements checked", elements.len())
        } else {
            format!("failed: {}", bad_cycle.join("; "))
        },
    );

    let mut by_degree: BTreeMap<usize, Vec<&PChain>> = BTreeMap::new();
    for chain in &elements {
        by_degree
            .entry(chain.internal_degree().expect("nonzero"))
            .or_default()
            .push(chain);
    }
    let mut independent = true;
    let mut count_match = true;
    let mut detail = Vec::new();
    for d in p..=max_degree {
        let listed = by_degree.get(&d).map_or(&[][..], |v| &v[..]);
        let boundary: Subspace = if family == Family::CurlQuotient {
            gradient_plus_phi_span(pp, d)
        } else if is_hphi {
            if d < 3 {
                Subspace::zero(chain_slice_dim(p, d))
            } else {
                let m = wedge_matrix(pp, p - 1, d - 3);
                echelon_rows(m.rows, m.transpose().to_rows())
            }
        } else if p == 3 {
            Subspace::zero(chain_slice_dim(3, d))
        } else {
            let m = delta_matrix(pp, p + 1, d);
            echelon_rows(m.rows, m.transpose().to_rows())
        };
        let mut rows = boundary.basis.clone();
        for chain in listed {
            rows.push(chain_coords(chain, d));
        }
        let total = echelon_rows(chain_slice_dim(p, d), rows).dim();
        if total != boundary.dim() + listed.len() {
            independent = false;
            detail.push(format!("degree {d}: classes dependent"));
        }
        let computed = if family == Family::CurlQuotient {
            curl_quotient_dim(pp, d)
        } else if is_hphi {
            let out = if p == 3 {
                RatMatrix::new(0, chain_slice_dim(3, d))
            } else {
                wedge_matrix(pp, p, d)
            };
            let inn = if d < 3 {
                RatMatrix::new(chain_slice_dim(p, d), 0)
            } else {
                wedge_matrix(pp, p - 1, d - 3)
            };
            slice_homology(&out, &inn, false).0
        } else {
            let out = if p == 0 {
                RatMatrix::new(0, chain_slice_dim(0, d))
            } else {
                delta_matrix(pp, p, d)
            };
            let inn = if p == 3 {
                RatMatrix::new(chain_slice_dim(3, d), 0)
            } else {
                delta_matrix(pp, p + 1, d)
            };
            slice_homology(&out, &inn, false).0
        };
        if computed != listed.len() {
            count_match = false;
            detail.push(format!(
                "degree {d}: computed {computed}, listed {}",
                listed.len()
            ));
        }
    }
    checks.push(
        format!("{}: classes independent in homology", family.name()),
        independent,
        String::new(),
    );
    checks.push(
        format!(
            "{}: per-degree counts equal computed dimensions",
            family.name()
        ),
        count_match,
        detail.join("; "),
    );
    checks
}
