//! The deformation bridge for the Jordan-type algebra: the y-degree
//! filtration on the Koszul complex of `B`, the identification of the
//! associated graded complex with the Poisson complex of `(T, φ = -x²z)`,
//! the explicit lifts of every Poisson homology basis element to a Koszul
//! cycle, a linear-solver fallback lifter, and the degree-by-degree
//! degeneration comparison `dim HH_p(B)_d = dim HP_p(T)_d`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::free::{partial_derivative, GenSet, NcPoly, NcTensor, Word};
use crate::linalg::{rat, solve, RatMatrix, SparseVec};
use crate::poisson::{
    chain_coords, chain_slice_dim, delta, family_counts,
    hp_table, monomials_of_degree, CPoly, Family, PChain, PoissonPotential,
};
use crate::potential::{build_b, koszul_hh, QuadMatrix};
use crate::quotient::RewriteSystem;
use crate::report::{CheckList, HomologyTable};
use crate::{Error, Rat};

/// `B` with exact normal-form arithmetic on the ordered monomial basis
/// `x^i y^j z^k`; coefficients of Koszul chains live here as [`CPoly`]
/// values read through that basis.
pub struct NfAlgebra {
    pub gens: GenSet,
    pub rs: RewriteSystem,
    pub relations: Vec<NcPoly>,
    pub cw: NcPoly,
    partials: Vec<Vec<NcTensor>>,
    relation_ydeg: Vec<usize>,
    cw_ydeg: usize,
}

fn nc_ydeg(p: &NcPoly) -> usize {
    p.terms
        .keys()
        .map(|w| w.0.iter().filter(|&&l| l == 1).count())
        .max()
        .unwrap_or(0)
}

impl NfAlgebra {
    pub fn new(matrix: &QuadMatrix) -> Result<Self, Error> {
        assert_eq!(matrix.n, 2, "normal-form arithmetic is for n = 2");
        let algebra = build_b(&matrix.m);
        let rs = RewriteSystem::derive(&algebra.presentation)?;
        let overlaps = rs.confluence_check();
        if !overlaps.is_empty() {
            return Err(Error::NotConfluent(overlaps.len()));
        }
        let partials = algebra
            .relations
            .iter()
            .map(|r| (0..3).map(|g| partial_derivative(r, g)).collect())
            .collect();
        Ok(NfAlgebra {
            gens: algebra.gens,
            rs,
            relation_ydeg: algebra.relations.iter().map(nc_ydeg).collect(),
            cw_ydeg: nc_ydeg(&algebra.cw),
            relations: algebra.relations,
            cw: algebra.cw,
            partials,
        })
    }

    pub fn jordan() -> Self {
        NfAlgebra::new(&QuadMatrix::jordan()).expect("Jordan rules are confluent")
    }

    fn cpoly_to_nc(p: &CPoly) -> NcPoly {
        let mut out = NcPoly::zero(3);
        for (&(i, j, k), c) in &p.terms {
            out.add_term(Word::from_exponents(&[i, j, k]), c.clone());
        }
        out
    }

    fn nc_to_cpoly(p: &NcPoly) -> CPoly {
        let mut out = CPoly::zero();
        for (w, c) in &p.terms {
            assert!(
                w.0.windows(2).all(|ab| ab[0] <= ab[1]),
                "word is not in normal form"
            );
            let e = w.exponents(3);
            out.add_term((e[0], e[1], e[2]), c.clone());
        }
        out
    }

    /// Product in `B`, computed by rewriting to the monomial basis.
    pub fn mul(&self, a: &CPoly, b: &CPoly) -> CPoly {
        let prod = Self::cpoly_to_nc(a).mul(&Self::cpoly_to_nc(b));
        Self::nc_to_cpoly(&self.rs.normal_form(&prod))
    }

    pub fn commutator(&self, a: &CPoly, b: &CPoly) -> CPoly {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// Filtration weight of the symbol in component `comp` of a `p`-chain.
    pub fn symbol_weight(&self, p: usize, comp: usize) -> usize {
        match p {
            0 => 0,
            1 => usize::from(comp == 1), // x, z weigh 0; y weighs 1
            2 => self.relation_ydeg[comp],
            3 => self.cw_ydeg,
            _ => panic!("p out of range"),
        }
    }
}

/// Chain of the Koszul complex of `B` in the monomial basis: one component
/// for `p ∈ {0,3}` (coefficients of `1` resp. `c(w)`), three components for
/// `p ∈ {1,2}` (coefficients of `x,y,z` resp. `r₁,r₂,r₃`).
#[derive(Clone, Debug, PartialEq)]
pub struct KChain {
    pub p: usize,
    pub comps: Vec<CPoly>,
}

impl KChain {
    pub fn zero(p: usize) -> Self {
        let comps = if p == 0 || p == 3 {
            vec![CPoly::zero()]
        } else {
            vec![CPoly::zero(), CPoly::zero(), CPoly::zero()]
        };
        KChain { p, comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(CPoly::is_zero)
    }

    pub fn add(&self, other: &KChain) -> KChain {
        assert_eq!(self.p, other.p);
        KChain {
            p: self.p,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &KChain) -> KChain {
        assert_eq!(self.p, other.p);
        KChain {
            p: self.p,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Internal degree (coefficient degree plus homological weight).
    pub fn internal_degree(&self) -> Option<usize> {
        self.comps
            .iter()
            .filter_map(CPoly::degree)
            .max()
            .map(|c| c + self.p)
    }

    /// Reads the chain as a Poisson chain through the basis identification.
    pub fn to_pchain(&self) -> PChain {
        match self.p {
            0 => PChain::C0(self.comps[0].clone()),
            1 => PChain::C1(crate::poisson::Vec3([
                self.comps[0].clone(),
                self.comps[1].clone(),
                self.comps[2].clone(),
            ])),
            2 => PChain::C2(crate::poisson::Vec3([
                self.comps[0].clone(),
                self.comps[1].clone(),
                self.comps[2].clone(),
            ])),
            3 => PChain::C3(self.comps[0].clone()),
            _ => unreachable!(),
        }
    }

    pub fn from_pchain(chain: &PChain) -> KChain {
        let comps = match chain {
            PChain::C0(f) | PChain::C3(f) => vec![f.clone()],
            PChain::C1(v) | PChain::C2(v) => v.0.to_vec(),
        };
        KChain {
            p: chain.p(),
            comps,
        }
    }
}

/// Total y-filtration degree: maximal `ydeg(coefficient) + ydeg(symbol)`
/// over the support. `None` for the zero chain.
pub fn y_filtration(alg: &NfAlgebra, chain: &KChain) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (comp, poly) in chain.comps.iter().enumerate() {
        let w = alg.symbol_weight(chain.p, comp);
        for &(_, j, _) in poly.terms.keys() {
            best = Some(best.map_or(j + w, |b: usize| b.max(j + w)));
        }
    }
    best
}

/// The part of the chain in exact filtration degree `level`, read as a
/// Poisson chain.
pub fn filtration_part(alg: &NfAlgebra, chain: &KChain, level: usize) -> PChain {
    let mut out = KChain::zero(chain.p);
    for (comp, poly) in chain.comps.iter().enumerate() {
        let w = alg.symbol_weight(chain.p, comp);
        if level >= w {
            out.comps[comp] = poly.y_part(level - w);
        }
    }
    out.to_pchain()
}

/// Top-filtration part: the associated-graded class of the chain.
pub fn gr_top(alg: &NfAlgebra, chain: &KChain) -> PChain {
    match y_filtration(alg, chain) {
        None => chain.to_pchain(),
        Some(f) => filtration_part(alg, chain, f),
    }
}

/// Koszul differential `d̃_p` computed in the monomial basis.
pub fn d_tilde(alg: &NfAlgebra, chain: &KChain) -> KChain {
    let vars = [CPoly::var(0), CPoly::var(1), CPoly::var(2)];
    match chain.p {
        0 => panic!("d̃ is undefined on 0-chains"),
        1 => {
            let mut out = CPoly::zero();
            for (j, a) in chain.comps.iter().enumerate() {
                out = out.add(&alg.commutator(a, &vars[j]));
            }
            KChain {
                p: 0,
                comps: vec![out],
            }
        }
        2 => {
            let mut out = KChain::zero(1);
            for (rel, a) in chain.comps.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, tensor) in alg.partials[rel].iter().enumerate() {
                    for ((u, v), c) in &tensor.terms {
                        let u_poly = NfAlgebra::nc_to_cpoly(&NcPoly::monomial(
                            3,
                            u.clone(),
                            Rat::one(),
                        ));
                        let v_poly = NfAlgebra::nc_to_cpoly(&NcPoly::monomial(
                            3,
                            v.clone(),
                            Rat::one(),
                        ));
                        let prod = alg.mul(&alg.mul(&v_poly, a), &u_poly).scale(c);
                        out.comps[j] = out.comps[j].add(&prod);
                    }
                }
            }
            out
        }
        3 => {
            let a = &chain.comps[0];
            KChain {
                p: 2,
                comps: (0..3).map(|j| alg.commutator(a, &vars[j])).collect(),
            }
        }
        _ => unreachable!(),
    }
}

/// Verifies the seven associated-graded identities
/// `gr_F(d̃_p(x^i y^j z^k ⊗ s)) = δ_p(x^i y^j z^k e_s)` for all
/// `i+j+k ≤ max_degree`, plus the degree statement that `d̃` lowers the
/// total filtration by at least one.
pub fn gr_compare(max_degree: usize) -> CheckList {
    let alg = NfAlgebra::jordan();
    let pp = PoissonPotential::jordan();
    let mut checks = CheckList::default();
    let mut mismatches = Vec::new();
    let mut degree_violations = Vec::new();
    let mut identities = 0usize;
    for d in 0..=max_degree {
        for e in monomials_of_degree(d) {
            let m = CPoly::monomial(e, Rat::one());
            for p in 1..=3usize {
                let comps = if p == 3 { 1 } else { 3 };
                for comp in 0..comps {
                    let mut chain = KChain::zero(p);
                    chain.comps[comp] = m.clone();
                    let f = y_filtration(&alg, &chain).expect("nonzero chain");
                    let image = d_tilde(&alg, &chain);
                    // d̃ lowers the filtration by at least 1
                    if let Some(fi) = y_filtration(&alg, &image) {
                        if fi + 1 > f {
                            degree_violations.push(format!("(p={p}, {e:?}, comp {comp})"));
                            continue;
                        }
                    }
                    // associated-graded identity
                    let graded = if f == 0 {
                        PChain::from_zero(image.p)
                    } else {
                        filtration_part(&alg, &image, f - 1)
                    };
                    let mut pchain = KChain::zero(p);
                    pchain.comps[comp] = m.clone();
                    let expected = delta(&pp, &pchain.to_pchain());
                    identities += 1;
                    if graded != expected {
                        mismatches.push(format!(
                            "(p={p}, {e:?}, comp {comp}): gr = {graded:?}, δ = {expected:?}"
                        ));
                    }
                }
            }
        }
    }
    checks.push(
        "gr identities: gr(d̃) = δ on monomial chains",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{identities} identities checked")
        } else {
            mismatches.join("; ")
        },
    );
    checks.push(
        "gr identities: d̃ lowers the filtration degree",
        degree_violations.is_empty(),
        degree_violations.join("; "),
    );
    checks
}

impl PChain {
    fn from_zero(p: usize) -> PChain {
        KChain::zero(p).to_pchain()
    }
}

// ---------------------------------------------------------------------------
// Explicit lifts
// ---------------------------------------------------------------------------

/// The lift families: homological index 1 (`A`, `B`, `U`, `V`, `W`),
/// index 2 (`C`, `D`, `E`, `O`) and index 3 (`Top`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftFamily {
    A(usize),
    B(usize),
    U(usize, usize),
    V(usize, usize),
    W(usize),
    C(usize),
    D(usize),
    E(usize),
    O(usize, usize),
    Top(usize),
}

impl LiftFamily {
    pub fn label(&self) -> String {
        match self {
            LiftFamily::A(k) => format!("A(k={k})"),
            LiftFamily::B(m) => format!("B(m={m})"),
            LiftFamily::U(n, k) => format!("U(n={n},k={k})"),
            LiftFamily::V(m, s) => format!("V(m={m},s={s})"),
            LiftFamily::W(p) => format!("W(p={p})"),
            LiftFamily::C(r) => format!("C(r={r})"),
            LiftFamily::D(s) => format!("D(s={s})"),
            LiftFamily::E(t) => format!("E(t={t})"),
            LiftFamily::O(n, k) => format!("O(n={n},k={k})"),
            LiftFamily::Top(k) => format!("Top(k={k})"),
        }
    }
}

/// An explicit Koszul chain together with the Poisson cycle it lifts.
#[derive(Clone, Debug)]
pub struct LiftRecord {
    pub family: LiftFamily,
    pub chain: KChain,
    pub target: PChain,
}

fn mono(i: usize, j: usize, k: usize) -> CPoly {
    CPoly::monomial((i, j, k), Rat::one())
}

fn factorial(n: usize) -> Rat {
    let mut out = Rat::one();
    for i in 2..=n {
        out *= rat(i as i64);
    }
    out
}

/// The explicit lift formula for the given family member.
pub fn build_lift(family: LiftFamily) -> LiftRecord {
    let chain = match family {
        LiftFamily::A(k) => {
            // x^{2k+1}z^{k+1} ⊗ x − x^{2k+2}z^k ⊗ z
            let mut c = KChain::zero(1);
            c.comps[0] = mono(2 * k + 1, 0, k + 1);
            c.comps[2] = mono(2 * k + 2, 0, k).scale(&rat(-1));
            c
        }
        LiftFamily::B(m) => {
            // z^{m+1} ⊗ x − x z^m ⊗ z; m = 0 lifts the constant
            // member (z, 0, -x)
            let mut c = KChain::zero(1);
            c.comps[0] = mono(0, 0, m + 1);
            c.comps[2] = mono(1, 0, m).scale(&rat(-1));
            c
        }
        LiftFamily::U(n, k) => build_u_lift(n, k),
        LiftFamily::V(m, s) => {
            assert!(m >= 1 && s <= m);
            let mut c = KChain::zero(1);
            if s >= 1 {
                c.comps[1] = mono(0, s - 1, m - s).scale(&rat(s as i64));
            }
            if m - s >= 1 {
                c.comps[2] = mono(0, s, m - 1 - s).scale(&rat((m - s) as i64));
            }
            if s >= 2 {
                // Σ_{ℓ=0}^{s-2} (m-s)/(2(m-s)-1) · s!/ℓ! · x^{s-ℓ-1} y^ℓ z^{m-s} ⊗ y
                let ratio = rat((m - s) as i64) / rat(2 * (m - s) as i64 - 1);
                for l in 0..=(s - 2) {
                    let coeff = &ratio * factorial(s) / factorial(l);
                    c.comps[1] = c.comps[1].add(&mono(s - l - 1, l, m - s).scale(&coeff));
                }
            }
            c
        }
        LiftFamily::W(p) => {
            // Σ_{k=0}^{p} p!/k! x^{p-k}y^k ⊗ x + Σ_{k=0}^{p-1} p!/k! x^{p-k}y^k ⊗ y
            let mut c = KChain::zero(1);
            for k in 0..=p {
                let coeff = factorial(p) / factorial(k);
                c.comps[0] = c.comps[0].add(&mono(p - k, k, 0).scale(&coeff));
            }
            for k in 0..p {
                let coeff = factorial(p) / factorial(k);
                c.comps[1] = c.comps[1].add(&mono(p - k, k, 0).scale(&coeff));
            }
            c
        }
        LiftFamily::C(r) => {
            // x^{2r+1}z^r ⊗ r₁ + x^{2r}yz^r ⊗ r₂ + x^{2r}z^{r+1} ⊗ r₃
            let mut c = KChain::zero(2);
            c.comps[0] = mono(2 * r + 1, 0, r);
            c.comps[1] = mono(2 * r, 1, r);
            c.comps[2] = mono(2 * r, 0, r + 1);
            c
        }
        LiftFamily::D(s) => {
            let mut c = KChain::zero(2);
            c.comps[1] = mono(2 * s + 1, 0, s);
            c
        }
        LiftFamily::E(t) => {
            // z^t ⊗ r₂; t = 0 lifts the constant member (0, 1, 0)
            let mut c = KChain::zero(2);
            c.comps[1] = mono(0, 0, t);
            c
        }
        LiftFamily::O(n, k) => {
            assert!(k <= n);
            let mut c = KChain::zero(2);
            c.comps[0] = mono(1, k, n - k).scale(&rat(k as i64 + 1));
            c.comps[1] = mono(0, k + 1, n - k).scale(&rat(2 * (n - k) as i64 + 1));
            c.comps[2] = mono(0, k, n - k + 1).scale(&rat(-2 * (k as i64 + 1)));
            // − Σ_{j=0}^{k-1} (k+1)!/j! x^{k-j} y^j z^{n+1-k} ⊗ r₃
            for j in 0..k {
                let coeff = factorial(k + 1) / factorial(j);
                c.comps[2] = c.comps[2].add(&mono(k - j, j, n + 1 - k).scale(&-coeff));
            }
            c
        }
        LiftFamily::Top(k) => {
            let mut c = KChain::zero(3);
            c.comps[0] = mono(2 * k, 0, k);
            c
        }
    };
    let target = match family {
        LiftFamily::A(k) => crate::poisson::hp1_a(k),
        LiftFamily::B(m) => crate::poisson::hp1_b(m),
        LiftFamily::U(n, k) => crate::poisson::hp1_u(n, k),
        LiftFamily::V(m, s) => crate::poisson::hp1_v(m, s),
        LiftFamily::W(p) => crate::poisson::hp1_w(p),
        LiftFamily::C(r) => crate::poisson::hp2_c(r),
        LiftFamily::D(s) => crate::poisson::hp2_d(s),
        LiftFamily::E(t) => crate::poisson::hp2_e(t),
        LiftFamily::O(n, k) => crate::poisson::hp2_o(n, k),
        LiftFamily::Top(k) => crate::poisson::hp3_phi(k),
    };
    LiftRecord {
        family,
        chain,
        target,
    }
}

/// `a_{n,k,ℓ} = -2n-6+6k-3ℓ+2n(k-ℓ)-3k(k-ℓ)`.
fn u_coefficient(n: i64, k: i64, l: i64) -> i64 {
    -2 * n - 6 + 6 * k - 3 * l + 2 * n * (k - l) - 3 * k * (k - l)
}

/// `𝒳_{a,b,c} = x^a y^b z^c ⊗ y − 2c · x^a y^b z^c ⊗ x` added with weight
/// `coeff`.
fn add_x_term(chain: &mut KChain, coeff: &Rat, a: usize, b: usize, c: usize) {
    chain.comps[1] = chain.comps[1].add(&mono(a, b, c).scale(coeff));
    chain.comps[0] = chain.comps[0].add(&mono(a, b, c).scale(&(coeff * rat(-2 * c as i64))));
}

fn build_u_lift(n: usize, k: usize) -> KChain {
    assert!((1..=n + 1).contains(&k), "U-family parameter out of range");
    let (ni, ki) = (n as i64, k as i64);
    let mut chain = KChain::zero(1);
    // head: (2n+3) y^k z^{n+2-k} ⊗ x − 3k x y^{k-1} z^{n+2-k} ⊗ y
    //       + (−2n+3(k−1)) x y^k z^{n+1-k} ⊗ z
    chain.comps[0] = mono(0, k, n + 2 - k).scale(&rat(2 * ni + 3));
    chain.comps[1] = mono(1, k - 1, n + 2 - k).scale(&rat(-3 * ki));
    chain.comps[2] = mono(1, k, n + 1 - k).scale(&rat(-2 * ni + 3 * (ki - 1)));
    if 3 * ki - 2 * (ni + 2) < 0 {
        // − Σ_{ℓ=0}^{k-2} k!/ℓ! · a_{n,k,ℓ}/(2(n+2-k)-(k-ℓ)) · 𝒳_{k-ℓ,ℓ,n+2-k}
        for l in 0..k.saturating_sub(1) {
            let li = l as i64;
            let denom = 2 * (ni + 2 - ki) - (ki - li);
            let coeff = -(factorial(k) / factorial(l))
                * rat(u_coefficient(ni, ki, li))
                / rat(denom);
            add_x_term(&mut chain, &coeff, k - l, l, n + 2 - k);
        }
    } else {
        let l0 = 3 * ki - 4 - 2 * ni;
        debug_assert!(l0 >= 0);
        let a_l0 = u_coefficient(ni, ki, l0);
        // + Σ_{ℓ=0}^{ℓ₀-1} k!/ℓ! (a_{n,k,ℓ₀} − a_{n,k,ℓ})/(ℓ−ℓ₀) 𝒳_{k-ℓ,ℓ,n+2-k}
        for l in 0..l0 {
            let coeff = (factorial(k) / factorial(l as usize))
                * rat(a_l0 - u_coefficient(ni, ki, l))
                / rat(l - l0);
            add_x_term(&mut chain, &coeff, k - l as usize, l as usize, n + 2 - k);
        }
        // − Σ_{ℓ=ℓ₀+1}^{k-2} k!/ℓ! a_{n,k,ℓ}/(ℓ−ℓ₀) 𝒳_{k-ℓ,ℓ,n+2-k}
        let upper = ki - 2;
        let mut l = l0 + 1;
        while l <= upper {
            let coeff = -(factorial(k) / factorial(l as usize))
                * rat(u_coefficient(ni, ki, l))
                / rat(l - l0);
            add_x_term(&mut chain, &coeff, k - l as usize, l as usize, n + 2 - k);
            l += 1;
        }
        // − k!/(ℓ₀+1)! a_{n,k,ℓ₀} x^{2n+3-2k} y^{3k-3-2n} z^{n+2-k} ⊗ x
        let coeff = -(factorial(k) / factorial((l0 + 1) as usize)) * rat(a_l0);
        let ex = (2 * ni + 3 - 2 * ki) as usize;
        let ey = (3 * ki - 3 - 2 * ni) as usize;
        chain.comps[0] = chain.comps[0].add(&mono(ex, ey, n + 2 - k).scale(&coeff));
    }
    chain
}

/// `d̃(chain) = 0` exactly and the top filtration part equals the target
/// Poisson cycle.
pub fn verify_lift(alg: &NfAlgebra, record: &LiftRecord) -> bool {
    d_tilde(alg, &record.chain).is_zero() && gr_top(alg, &record.chain) == record.target
}

/// All lift family members whose internal degree is at most `max_degree`.
pub fn all_lifts(max_degree: usize) -> Vec<LiftRecord> {
    let dmax = max_degree;
    let mut out = Vec::new();
    for k in 0..=dmax.saturating_sub(3) / 3 {
        if 3 * k + 3 <= dmax {
            out.push(build_lift(LiftFamily::A(k)));
            out.push(build_lift(LiftFamily::C(k)));
            out.push(build_lift(LiftFamily::D(k)));
            out.push(build_lift(LiftFamily::Top(k)));
        }
    }
    if dmax >= 2 {
        for m in 0..=dmax - 2 {
            out.push(build_lift(LiftFamily::B(m)));
            out.push(build_lift(LiftFamily::E(m)));
        }
    }
    if dmax >= 3 {
        for n in 0..=dmax - 3 {
            for k in 1..=n + 1 {
                out.push(build_lift(LiftFamily::U(n, k)));
            }
            for k in 0..=n {
                out.push(build_lift(LiftFamily::O(n, k)));
            }
        }
    }
    for m in 1..=dmax {
        for s in 0..=m {
            out.push(build_lift(LiftFamily::V(m, s)));
        }
    }
    for p in 0..dmax {
        out.push(build_lift(LiftFamily::W(p)));
    }
    out.retain(|r| r.chain.internal_degree().is_some_and(|d| d <= dmax));
    out
}

/// Runs `verify_lift` on every transcribed formula with internal degree
/// `≤ max_degree`. A transcription failure is flagged and replaced by a
/// solver witness rather than silently patched.
pub fn verify_all_lifts(max_degree: usize) -> CheckList {
    let alg = NfAlgebra::jordan();
    let pp = PoissonPotential::jordan();
    let mut checks = CheckList::default();
    let records = all_lifts(max_degree);
    let total = records.len();
    let mut failures = Vec::new();
    let mut unrecovered = Vec::new();
    for record in &records {
        if !verify_lift(&alg, record) {
            // flagged discrepancy: fall back to the solver witness
            match lift_by_solver(&alg, &pp, &record.target) {
                Ok(Some(_)) => failures.push(record.family.label()),
                _ => unrecovered.push(record.family.label()),
            }
        }
    }
    checks.push(
        "lifts: every transcribed formula is a Koszul cycle lifting its target",
        failures.is_empty() && unrecovered.is_empty(),
        if failures.is_empty() && unrecovered.is_empty() {
            format!("{total} lift formulas verified")
        } else {
            format!(
                "transcription failures replaced by solver witnesses: [{}]; unrecovered: [{}]",
                failures.join(", "),
                unrecovered.join(", ")
            )
        },
    );
    checks
}

/// Solves for a Koszul cycle whose top filtration part is the given Poisson
/// cycle: the unknowns are the strictly-lower-filtration basis chains of the
/// same slice. Returns `None` only if the linear system is infeasible.
pub fn lift_by_solver(
    alg: &NfAlgebra,
    pp: &PoissonPotential,
    target: &PChain,
) -> Result<Option<KChain>, Error> {
    let p = target.p();
    if target.is_zero() {
        return Ok(Some(KChain::zero(p)));
    }
    if p == 0 {
        return Ok(Some(KChain::from_pchain(target)));
    }
    if !delta(pp, target).is_zero() {
        return Err(Error::Precondition(
            "lift target is not a Poisson cycle".into(),
        ));
    }
    let d = target.internal_degree().expect("nonzero target");
    let base = KChain::from_pchain(target);
    let f = y_filtration(alg, &base).expect("nonzero chain");

    // basis chains of the (p, d) slice with filtration strictly below f
    let coeff_degree = d - p;
    let monoms = monomials_of_degree(coeff_degree);
    let blocks = if p == 3 { 1 } else { 3 };
    let mut unknowns = Vec::new();
    for comp in 0..blocks {
        let w = alg.symbol_weight(p, comp);
        for &e in &monoms {
            if e.1 + w < f {
                unknowns.push((comp, e));
            }
        }
    }

    let out_dim = chain_slice_dim(p - 1, d);
    let mut matrix = RatMatrix::new(out_dim, unknowns.len());
    for (col, &(comp, e)) in unknowns.iter().enumerate() {
        let mut chain = KChain::zero(p);
        chain.comps[comp] = CPoly::monomial(e, Rat::one());
        let image = d_tilde(alg, &chain);
        for (row, v) in chain_coords(&image.to_pchain(), d) {
            matrix.set(row, col, v);
        }
    }
    let rhs_chain = d_tilde(alg, &base);
    let mut rhs = SparseVec::new();
    for (row, v) in chain_coords(&rhs_chain.to_pchain(), d) {
        rhs.insert(row, -v);
    }
    match solve(&matrix, &rhs) {
        None => Ok(None),
        Some(x) => {
            let mut result = base;
            for (col, v) in x {
                let (comp, e) = unknowns[col];
                result.comps[comp] = result.comps[comp].add(&CPoly::monomial(e, v));
            }
            Ok(Some(result))
        }
    }
}

/// For every Poisson basis cycle of internal degree `≤ max_degree`: the
/// solver finds a lift, and where a transcribed formula exists the two
/// lifts agree up to strictly smaller filtration (their difference is a
/// `d̃`-cycle below the common top part).
pub fn solver_cross_check(max_degree: usize) -> CheckList {
    let alg = NfAlgebra::jordan();
    let pp = PoissonPotential::jordan();
    let mut checks = CheckList::default();
    let mut solver_failures = Vec::new();
    let mut difference_failures = Vec::new();
    let records = all_lifts(max_degree);
    let total = records.len();
    for record in &records {
        match lift_by_solver(&alg, &pp, &record.target) {
            Ok(Some(solved)) => {
                let diff = record.chain.sub(&solved);
                if !diff.is_zero() {
                    let below_top = y_filtration(&alg, &diff)
                        < y_filtration(&alg, &record.chain);
                    if !(below_top && d_tilde(&alg, &diff).is_zero()) {
                        difference_failures.push(record.family.label());
                    }
                }
            }
            _ => solver_failures.push(record.family.label()),
        }
    }
    checks.push(
        "solver lifts every Poisson basis cycle",
        solver_failures.is_empty(),
        if solver_failures.is_empty() {
            format!("{total} targets lifted")
        } else {
            solver_failures.join(", ")
        },
    );
    checks.push(
        "formula and solver lifts differ by lower-filtration cycles",
        difference_failures.is_empty(),
        difference_failures.join(", "),
    );
    checks
}

/// Degree-by-degree degeneration: `dim HH_p(B)_d = dim HP_p(T)_d` equals
/// the per-degree count of the explicit homology bases for all `p ≤ 3`,
/// `d ≤ max_degree`, and the complex has length 3 so `HH_p = 0` for
/// `p ≥ 4`.
pub fn degeneration_check(
    max_degree: usize,
) -> Result<(CheckList, HomologyTable, HomologyTable), Error> {
    let (hh, dd_zero) = koszul_hh(&QuadMatrix::jordan(), max_degree, false)?;
    let pp = PoissonPotential::jordan();
    let hp = hp_table(&pp, max_degree, false);
    let mut checks = CheckList::default();
    checks.push(
        "Koszul differentials square to zero",
        dd_zero,
        String::new(),
    );
    let families = [Family::Hp0, Family::Hp1, Family::Hp2, Family::Hp3];
    let mut mismatches = Vec::new();
    for (p, family) in families.into_iter().enumerate() {
        let counts = family_counts(family, max_degree);
        for d in 0..=max_degree {
            let expected = counts.get(&d).copied().unwrap_or(0);
            let hh_dim = hh.dim(p, d);
            let hp_dim = hp.dim(p, d);
            if hh_dim != hp_dim || hh_dim != expected {
                mismatches.push(format!(
                    "(p={p}, d={d}): HH = {hh_dim}, HP = {hp_dim}, basis count = {expected}"
                ));
            }
        }
    }
    checks.push(
        "degeneration: dim HH_p(B)_d = dim HP_p(T)_d = basis count",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("all (p, d) with p ≤ 3, d ≤ {max_degree} agree")
        } else {
            mismatches.join("; ")
        },
    );
    checks.push(
        "HH_p(B) = 0 for p ≥ 4",
        true,
        "the Koszul complex has length 3",
    );
    Ok((checks, hh, hp))
}

/// Expected Hochschild/Poisson dimension of the quantum plane per `(p, d)`,
/// enumerated from the listed bases (`Z = ℂ[xyz]`).
pub fn quantum_basis_count(p: usize, d: usize) -> usize {
    match p {
        // Z ⊕ xℂ[x] ⊕ yℂ[y] ⊕ zℂ[z]
        0 => {
            let mut count = 0;
            if d.is_multiple_of(3) {
                count += 1; // (xyz)^{d/3}
            }
            if d >= 1 {
                count += 3; // x^d, y^d, z^d
            }
            count
        }
        // (ℂ[x] ⊕ yzZ)⊗x ⊕ (ℂ[y] ⊕ xzZ)⊗y ⊕ (ℂ[z] ⊕ xyZ)⊗z
        1 => {
            if d < 1 {
                return 0;
            }
            let c = d - 1;
            3 * (1 + usize::from(c % 3 == 2))
        }
        // xZ⊗(y∧z) ⊕ yZ⊗(z∧x) ⊕ zZ⊗(x∧y)
        2 => {
            if d < 2 {
                return 0;
            }
            let c = d - 2;
            3 * usize::from(c % 3 == 1)
        }
        // Z⊗(x∧y∧z)
        3 => {
            if d < 3 {
                return 0;
            }
            usize::from((d - 3).is_multiple_of(3))
        }
        _ => 0,
    }
}

/// Builds the quantum algebra and its semiclassical limit for rational
/// `q ∉ {0, ±1}` and compares both homology tables against the enumerated
/// basis counts.
pub fn quantum_compare(
    q: &Rat,
    max_degree: usize,
) -> Result<(CheckList, HomologyTable, HomologyTable), Error> {
    if q.is_zero() || q.numer().abs() == q.denom().abs() {
        return Err(Error::BadInput(
            "quantum comparison needs rational q with |q| ∉ {0, 1}".into(),
        ));
    }
    let (hh, dd_zero) = koszul_hh(&QuadMatrix::quantum(q)?, max_degree, false)?;
    let pp = PoissonPotential::quantum(q)?;
    let hp = hp_table(&pp, max_degree, false);
    let mut checks = CheckList::default();
    checks.push(
        "quantum Koszul differentials square to zero",
        dd_zero,
        String::new(),
    );
    let mut mismatches = Vec::new();
    for p in 0..=3usize {
        for d in 0..=max_degree {
            let expected = quantum_basis_count(p, d);
            let hh_dim = hh.dim(p, d);
            let hp_dim = hp.dim(p, d);
            if hh_dim != expected || hp_dim != expected {
                mismatches.push(format!(
                    "(p={p}, d={d}): HH = {hh_dim}, HP = {hp_dim}, basis count = {expected}"
                ));
            }
        }
    }
    checks.push(
        "quantum: HH and HP dimensions match the enumerated bases",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("all (p, d) with p ≤ 3, d ≤ {max_degree} agree")
        } else {
            mismatches.join("; ")
        },
    );
    Ok((checks, hh, hp))
}

/// Per-degree counts of the explicit Jordan homology bases, used as the
/// expected `HH`/`HP` dimensions.
pub fn jordan_basis_counts(max_degree: usize) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for (p, family) in [Family::Hp0, Family::Hp1, Family::Hp2, Family::Hp3]
        .into_iter()
        .enumerate()
    {
        for (d, count) in family_counts(family, max_degree) {
            out.insert((p, d), count);
        }
    }
    out
}

pub use crate::poisson::hp_table as poisson_table;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn normal_form_multiplication() {
        let alg = NfAlgebra::jordan();
        // yx = xy + x², zy = yz + 2xz
        let x = CPoly::var(0);
        let y = CPoly::var(1);
        let z = CPoly::var(2);
        assert_eq!(alg.mul(&y, &x), mono(1, 1, 0).add(&mono(2, 0, 0)));
        assert_eq!(
            alg.mul(&z, &y),
            mono(0, 1, 1).add(&mono(1, 0, 1).scale(&rat(2)))
        );
        assert_eq!(alg.mul(&x, &z), alg.mul(&z, &x));
    }

    #[test]
    fn d1_on_simple_chains() {
        let alg = NfAlgebra::jordan();
        // d̃₁(y ⊗ x) = [y, x] = -x²  (yx = xy + x² so yx - xy = x²; [y,x] = yx... )
        let mut chain = KChain::zero(1);
        chain.comps[0] = CPoly::var(1);
        let image = d_tilde(&alg, &chain);
        assert_eq!(image.comps[0], mono(2, 0, 0));
    }

    #[test]
    fn lift_examples_from_the_proof() {
        let alg = NfAlgebra::jordan();
        // Ã₀ = xz⊗x − x²⊗z is a cycle since zx = xz
        let a0 = build_lift(LiftFamily::A(0));
        assert!(verify_lift(&alg, &a0));
        // W̃₀ = 1⊗x
        let w0 = build_lift(LiftFamily::W(0));
        assert_eq!(w0.chain.comps[0], CPoly::one());
        assert!(verify_lift(&alg, &w0));
        // Ẽ: z-powers tensor r₂
        for t in 0..4 {
            assert!(verify_lift(&alg, &build_lift(LiftFamily::E(t))));
        }
    }

    #[test]
    fn u_lift_both_branches() {
        let alg = NfAlgebra::jordan();
        // branch 3k - 2(n+2) < 0
        assert!(verify_lift(&alg, &build_lift(LiftFamily::U(2, 2))));
        // branch 3k - 2(n+2) ≥ 0
        assert!(verify_lift(&alg, &build_lift(LiftFamily::U(1, 2))));
        assert!(verify_lift(&alg, &build_lift(LiftFamily::U(2, 3))));
    }

    #[test]
    fn all_lifts_verify_to_degree_six() {
        let alg = NfAlgebra::jordan();
        for record in all_lifts(6) {
            assert!(
                verify_lift(&alg, &record),
                "lift {} failed",
                record.family.label()
            );
        }
    }

    #[test]
    fn gr_identities_to_degree_five() {
        let checks = gr_compare(5);
        assert!(checks.all_pass(), "{:?}", checks.checks);
    }

    #[test]
    fn solver_lifts_simple_targets() {
        let alg = NfAlgebra::jordan();
        let pp = PoissonPotential::jordan();
        // zero target
        let zero = PChain::C1(crate::poisson::Vec3::zero());
        assert!(lift_by_solver(&alg, &pp, &zero).unwrap().unwrap().is_zero());
        // a non-cycle input violates the precondition
        let bad = PChain::C1(crate::poisson::Vec3::new(
            CPoly::var(1),
            CPoly::zero(),
            CPoly::zero(),
        ));
        assert!(lift_by_solver(&alg, &pp, &bad).is_err());
        // a genuine basis cycle
        let target = crate::poisson::hp1_u(1, 1);
        let lifted = lift_by_solver(&alg, &pp, &target).unwrap().unwrap();
        assert!(d_tilde(&alg, &lifted).is_zero());
        assert_eq!(gr_top(&alg, &lifted), target);
    }

    #[test]
    fn degeneration_low_degree() {
        let (checks, hh, hp) = degeneration_check(5).unwrap();
        assert!(checks.all_pass(), "{:?}", checks.checks);
        assert_eq!(hh.dim(1, 2), 5);
        assert_eq!(hp.dim(1, 2), 5);
        assert_eq!(hh.dim(3, 3), 1);
    }

    #[test]
    fn quantum_comparison_low_degree() {
        let (checks, _, _) = quantum_compare(&rat(2), 5).unwrap();
        assert!(checks.all_pass(), "{:?}", checks.checks);
        assert!(quantum_compare(&rat(1), 4).is_err());
        assert!(quantum_compare(&rat(-1), 4).is_err());
        assert!(quantum_compare(&frac(1, 2), 4).is_ok());
    }
}
