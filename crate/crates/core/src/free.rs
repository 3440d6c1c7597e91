//! Free associative algebra over `ℚ` with the noncommutative calculus used
//! by potentials `w = fz`: cyclic sums, cyclic derivatives, ordinary partial
//! derivatives with values in tensors, the Euler relation and the Hessian
//! symmetry.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::linalg::{rat_string, Rat};
use crate::Error;

/// Ordered list of degree-1 generators. When a distinguished generator `z`
/// is present it is the last one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet {
    names: Vec<String>,
}

impl GenSet {
    pub fn new(names: Vec<String>) -> Self {
        assert!(names.len() < 256, "words store letters as bytes");
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate generator name `{n}`");
        }
        GenSet { names }
    }

    /// `x_1, …, x_n, z`, rendered as `x, y, z` when `n = 2` and as `x, z`
    /// when `n = 1`.
    pub fn with_z(n: usize) -> Self {
        let mut names: Vec<String> = match n {
            1 => vec!["x".into()],
            2 => vec!["x".into(), "y".into()],
            _ => (1..=n).map(|i| format!("x{i}")).collect(),
        };
        names.push("z".into());
        GenSet::new(names)
    }

    /// The `x` generators only (no `z`).
    pub fn without_z(n: usize) -> Self {
        let mut g = GenSet::with_z(n);
        g.names.pop();
        g
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Index of the distinguished last generator.
    pub fn z_index(&self) -> usize {
        self.names.len() - 1
    }
}

/// Noncommutative monomial: a finite sequence of generator indices.
/// The ordering is degree first, then lexicographic on the index sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        debug_assert!(i < 256, "generator index must fit in a byte");
        Word(vec![i as u8])
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l as u8).collect())
    }

    /// Word `g_0^{e_0} g_1^{e_1} …` for exponent list `exps`.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut letters = Vec::new();
        for (g, &e) in exps.iter().enumerate() {
            letters.extend(std::iter::repeat_n(g as u8, e));
        }
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn rotate_left(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.rotate_left(k);
        Word(v)
    }

    /// Exponent of each generator (commutative shadow).
    pub fn exponents(&self, ngens: usize) -> Vec<usize> {
        let mut e = vec![0usize; ngens];
        for &l in &self.0 {
            e[l as usize] += 1;
        }
        e
    }

    pub fn render(&self, gens: &GenSet) -> String {
        if self.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut run: Option<(u8, usize)> = None;
        for &l in self.0.iter().chain(std::iter::once(&u8::MAX)) {
            match run {
                Some((g, count)) if g == l => run = Some((g, count + 1)),
                Some((g, count)) => {
                    let name = gens.name(g as usize);
                    parts.push(if count == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{count}")
                    });
                    run = (l != u8::MAX).then_some((l, 1));
                }
                None => run = Some((l, 1)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse element of the free algebra: word → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    pub ngens: usize,
    pub terms: BTreeMap<Word, Rat>,
}

impl NcPoly {
    pub fn zero(ngens: usize) -> Self {
        NcPoly {
            ngens,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ngens: usize) -> Self {
        NcPoly::monomial(ngens, Word::one(), Rat::one())
    }

    pub fn gen(ngens: usize, i: usize) -> Self {
        assert!(i < ngens, "generator index out of range");
        NcPoly::monomial(ngens, Word::gen(i), Rat::one())
    }

    pub fn monomial(ngens: usize, word: Word, coeff: Rat) -> Self {
        let mut p = NcPoly::zero(ngens);
        p.add_term(word, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, coeff: Rat) {
        assert!(
            word.0.iter().all(|&l| (l as usize) < self.ngens),
            "letter outside generator set"
        );
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        assert_eq!(self.ngens, other.ngens, "mismatched generator sets");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(self.ngens);
        }
        NcPoly {
            ngens: self.ngens,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Bilinear concatenation product of the free algebra.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        assert_eq!(self.ngens, other.ngens, "mismatched generator sets");
        let mut out = NcPoly::zero(self.ngens);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// True when every term has the same degree (the zero polynomial counts
    /// as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Word::len);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn render(&self, gens: &GenSet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !abs.is_one() || w.is_empty();
            if show_coeff {
                let _ = write!(out, "{}", rat_string(&abs));
                if !w.is_empty() {
                    out.push('*');
                }
            }
            if !w.is_empty() {
                out.push_str(&w.render(gens));
            }
        }
        out
    }
}

/// Element of `F ⊗ F`, the value space of ordinary partial derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcTensor {
    pub ngens: usize,
    pub terms: BTreeMap<(Word, Word), Rat>,
}

impl NcTensor {
    pub fn zero(ngens: usize) -> Self {
        NcTensor {
            ngens,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, left: Word, right: Word, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((left, right)).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The flip `τ(u ⊗ v) = v ⊗ u`.
    pub fn flip(&self) -> NcTensor {
        let mut out = NcTensor::zero(self.ngens);
        for ((u, v), c) in &self.terms {
            out.add_term(v.clone(), u.clone(), c.clone());
        }
        out
    }
}

/// Sum of the `d` cyclic rotations of every degree-`d` monomial, extended
/// linearly. Rejects non-homogeneous input.
pub fn cyclic_sum(a: &NcPoly) -> Result<NcPoly, Error> {
    if !a.is_homogeneous() {
        return Err(Error::Precondition(
            "cyclic sum requires a homogeneous argument".into(),
        ));
    }
    let mut out = NcPoly::zero(a.ngens);
    for (w, c) in &a.terms {
        for k in 0..w.len().max(1) {
            out.add_term(w.rotate_left(k), c.clone());
        }
    }
    Ok(out)
}

/// Cyclic derivative on a representative: every occurrence `u·g·v` of the
/// generator contributes `coeff · (v·u)`.
pub fn cyclic_derivative(w: &NcPoly, g: usize) -> NcPoly {
    assert!(g < w.ngens, "unknown generator");
    let mut out = NcPoly::zero(w.ngens);
    for (word, c) in &w.terms {
        for (pos, &letter) in word.0.iter().enumerate() {
            if letter as usize == g {
                let mut suffix_prefix = word.0[pos + 1..].to_vec();
                suffix_prefix.extend_from_slice(&word.0[..pos]);
                out.add_term(Word(suffix_prefix), c.clone());
            }
        }
    }
    out
}

/// Ordinary partial derivative `∂a/∂x_g = Σ_{a = u·g·v} u ⊗ v`.
pub fn partial_derivative(a: &NcPoly, g: usize) -> NcTensor {
    assert!(g < a.ngens, "unknown generator");
    let mut out = NcTensor::zero(a.ngens);
    for (word, c) in &a.terms {
        for (pos, &letter) in word.0.iter().enumerate() {
            if letter as usize == g {
                out.add_term(
                    Word(word.0[..pos].to_vec()),
                    Word(word.0[pos + 1..].to_vec()),
                    c.clone(),
                );
            }
        }
    }
    out
}

fn check_potential_shape(w: &NcPoly) -> Result<(), Error> {
    let z = w.ngens - 1;
    for word in w.terms.keys() {
        let ok = word.len() == 3
            && word.0[2] as usize == z
            && word.0[..2].iter().all(|&l| (l as usize) < z);
        if !ok {
            return Err(Error::Precondition(
                "potential is not of the form fz with f quadratic in the x generators".into(),
            ));
        }
    }
    Ok(())
}

/// Noncommutative Euler relation for `w = fz`:
/// `Σ_i ∂_{x_i}(w)·x_i + f·z = Σ_i x_i·∂_{x_i}(w) + z·f = c(w)`.
pub fn euler_check(w: &NcPoly) -> Result<bool, Error> {
    check_potential_shape(w)?;
    let z = w.ngens - 1;
    let f = cyclic_derivative(w, z);
    let cw = cyclic_sum(w)?;
    let zpoly = NcPoly::gen(w.ngens, z);
    let mut right = f.mul(&zpoly);
    let mut left = zpoly.mul(&f);
    for i in 0..z {
        let di = cyclic_derivative(w, i);
        let xi = NcPoly::gen(w.ngens, i);
        right = right.add(&di.mul(&xi));
        left = left.add(&xi.mul(&di));
    }
    Ok(right == cw && left == cw)
}

/// Hessian symmetry `τ(∂²w/∂x_i∂x_j) = ∂²w/∂x_j∂x_i` for all generator
/// pairs, where `∂²/∂x_i∂x_j = (∂/∂x_i) ∘ ∂_{x_j}` mixes the ordinary and
/// the cyclic derivative.
pub fn hessian_symmetry_check(w: &NcPoly) -> bool {
    assert!(w.is_homogeneous(), "potential must be homogeneous");
    let second = |i: usize, j: usize| partial_derivative(&cyclic_derivative(w, j), i);
    for i in 0..w.ngens {
        for j in 0..w.ngens {
            if second(i, j).flip() != second(j, i) {
                return false;
            }
        }
    }
    true
}
