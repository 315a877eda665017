//! The abstract Clifford algebra `Cl_r` with `e_i·e_i = -1`.
//!
//! Basis blades are subsets of `{1..r}` stored as bitmasks (bit `i-1` is
//! `e_i`). Products are computed on demand; no multiplication table exists.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const MAX_ALGEBRA_RANK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSignature {
    rank: usize,
}

impl AlgebraSignature {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_ALGEBRA_RANK {
            return Err(Error::InvalidRank(rank));
        }
        Ok(AlgebraSignature { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Mask of all generators `e_1 … e_r`.
    pub fn full_mask(&self) -> u32 {
        if self.rank == 32 {
            u32::MAX
        } else {
            (1u32 << self.rank) - 1
        }
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if mask & !self.full_mask() != 0 {
            let index = 32 - mask.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, rank: self.rank });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        Ok(())
    }
}

/// Mask of a list of 1-based indices.
pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

/// Ascending 1-based indices of a mask.
pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

pub fn grade(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// Sign of `e_S · e_T` in `Cl_r`; the resulting blade is `S Δ T`.
pub fn blade_sign(s: u32, t: u32) -> i8 {
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (s >> b >> 1).count_ones();
    }
    swaps += (s & t).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `e_S · e_T = sign · e_{S Δ T}`.
pub fn blade_product(s: u32, t: u32, sig: AlgebraSignature) -> Result<(i8, u32)> {
    sig.check_mask(s)?;
    sig.check_mask(t)?;
    Ok((blade_sign(s, t), s ^ t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedBlade {
    pub mask: u32,
    pub sign: i8,
}

impl SignedBlade {
    pub fn indices(&self) -> Vec<usize> {
        indices_of(self.mask)
    }

    pub fn to_element(&self, sig: AlgebraSignature) -> CliffordElement {
        CliffordElement::blade_mask(sig, self.mask, Rational::from_int(self.sign as i64))
    }
}

/// `(-1)^{r(r+1)/2}`, the square of the volume element.
pub fn volume_square_sign(r: usize) -> i8 {
    if (r * (r + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign `ε` in `ω·e_i = ε·e_i·ω`, namely `(-1)^{r-1}`.
pub fn volume_parity(r: usize) -> i8 {
    if r % 2 == 1 {
        1
    } else {
        -1
    }
}

pub fn volume_element(sig: AlgebraSignature) -> CliffordElement {
    CliffordElement::blade_mask(sig, sig.full_mask(), Rational::ONE)
}

/// The blade `⋆e_i` of grade `r-1` normalized by `e_i·⋆e_i = e_{1..r}`.
pub fn hodge_dual_vector(i: usize, sig: AlgebraSignature) -> Result<SignedBlade> {
    sig.check_index(i)?;
    let bit = 1u32 << (i - 1);
    let rest = sig.full_mask() ^ bit;
    // e_i·e_rest = s·e_full, and s² = 1.
    Ok(SignedBlade { mask: rest, sign: blade_sign(bit, rest) })
}

/// Image of `e_i ∧ e_j` in `Cl⁰`, i.e. `e_i·e_j + h(e_i, e_j)`.
pub fn lambda2_embed(i: usize, j: usize, sig: AlgebraSignature) -> Result<CliffordElement> {
    sig.check_index(i)?;
    sig.check_index(j)?;
    if i == j {
        return Ok(CliffordElement::zero(sig));
    }
    let g = |k| CliffordElement::generator(sig, k);
    Ok(&g(i)? * &g(j)?)
}

/// Image of the 2-form `Σ a·e_i∧e_j`.
pub fn lambda2_embed_form(form: &[(usize, usize, Rational)], sig: AlgebraSignature) -> Result<CliffordElement> {
    let mut out = CliffordElement::zero(sig);
    for &(i, j, a) in form {
        out = &out + &lambda2_embed(i, j, sig)?.scale(a);
    }
    Ok(out)
}

/// An exact element of `Cl_r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    sig: AlgebraSignature,
    terms: BTreeMap<u32, Rational>,
}

impl CliffordElement {
    pub fn zero(sig: AlgebraSignature) -> Self {
        CliffordElement { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: AlgebraSignature, c: Rational) -> Self {
        Self::blade_mask(sig, 0, c)
    }

    pub fn one(sig: AlgebraSignature) -> Self {
        Self::scalar(sig, Rational::ONE)
    }

    pub fn generator(sig: AlgebraSignature, i: usize) -> Result<Self> {
        sig.check_index(i)?;
        Ok(Self::blade_mask(sig, 1 << (i - 1), Rational::ONE))
    }

    /// `c·e_mask`; panics when the mask exceeds the rank.
    pub fn blade_mask(sig: AlgebraSignature, mask: u32, c: Rational) -> Self {
        sig.check_mask(mask).expect("blade outside signature");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        CliffordElement { sig, terms }
    }

    /// The ordered product `e_{i1}·e_{i2}·…` of the listed generators.
    pub fn word(sig: AlgebraSignature, indices: &[usize]) -> Result<Self> {
        let mut out = Self::one(sig);
        for &i in indices {
            out = &out * &Self::generator(sig, i)?;
        }
        Ok(out)
    }

    pub fn from_terms(sig: AlgebraSignature, terms: impl IntoIterator<Item = (u32, Rational)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (mask, c) in terms {
            sig.check_mask(mask)?;
            let e = out.entry(mask).or_insert(Rational::ZERO);
            *e += c;
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(CliffordElement { sig, terms: out })
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn rank(&self) -> usize {
        self.sig.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, Rational)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.terms.get(&mask).copied().unwrap_or(Rational::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| grade(*m).is_multiple_of(2))
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| grade(*m) % 2 == 1)
    }

    pub fn scale(&self, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.sig);
        }
        CliffordElement { sig: self.sig, terms: self.terms.iter().map(|(&m, &v)| (m, v * c)).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_sig(other)?;
        let mut terms = self.terms.clone();
        for (&m, &c) in &other.terms {
            let e = terms.entry(m).or_insert(Rational::ZERO);
            *e += c;
            if e.is_zero() {
                terms.remove(&m);
            }
        }
        Ok(CliffordElement { sig: self.sig, terms })
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.same_sig(other)?;
        let mut terms: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&s, &a) in &self.terms {
            for (&t, &b) in &other.terms {
                let c = a * b * Rational::from_int(blade_sign(s, t) as i64);
                let e = terms.entry(s ^ t).or_insert(Rational::ZERO);
                *e += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(CliffordElement { sig: self.sig, terms })
    }

    fn same_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch { left: self.sig.rank, right: other.sig.rank });
        }
        Ok(())
    }

    fn sorted_terms(&self) -> Vec<(u32, Rational)> {
        let mut t: Vec<_> = self.terms().collect();
        t.sort_by_key(|&(m, _)| (grade(m), indices_of(m)));
        t
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson { blades: indices_of(m), num: c.numer(), den: c.denom() })
                .collect(),
            rank: self.sig.rank,
        }
    }

    pub fn from_json(json: &ElementJson) -> Result<Self> {
        let sig = AlgebraSignature::new(json.rank)?;
        let mut terms = Vec::new();
        for t in &json.terms {
            if t.den == 0 {
                return Err(Error::Parse("zero denominator".into()));
            }
            let mut sorted = t.blades.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted != t.blades {
                return Err(Error::Parse(format!("blade {:?} is not strictly increasing", t.blades)));
            }
            for &i in &t.blades {
                sig.check_index(i)?;
            }
            terms.push((mask_of(&t.blades), Rational::new(t.num, t.den)));
        }
        Self::from_terms(sig, terms)
    }

    /// Parses the canonical text form produced by `Display`.
    pub fn parse(s: &str, sig: AlgebraSignature) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(sig));
        }
        let mut terms = Vec::new();
        for term in s.split(" + ") {
            let bad = || Error::Parse(format!("malformed term `{term}`"));
            let (coef, blade) = term.split_once("·e{").ok_or_else(bad)?;
            let blade = blade.strip_suffix('}').ok_or_else(bad)?;
            let c: Rational = coef.trim_start_matches('+').parse().map_err(|_| bad())?;
            let idx: Vec<usize> = if blade.is_empty() {
                Vec::new()
            } else {
                blade.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
            };
            for &i in &idx {
                sig.check_index(i)?;
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad());
            }
            terms.push((mask_of(&idx), c));
        }
        Self::from_terms(sig, terms)
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let idx: Vec<String> = indices_of(m).iter().map(ToString::to_string).collect();
                let sign = if c < Rational::ZERO { "-" } else { "+" };
                format!("{sign}{}·e{{{}}}", c.abs(), idx.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl{}[{}]", self.sig.rank, self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub blades: Vec<usize>,
    pub num: i128,
    pub den: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
    pub rank: usize,
}

impl FromStr for AlgebraSignature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = s.trim().parse().map_err(|_| Error::Parse(format!("bad rank `{s}`")))?;
        AlgebraSignature::new(r)
    }
}

// Operator forms panic on mismatched signatures; use the `try_`/named
// methods when the inputs are untrusted.
impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        self.try_add(rhs).expect("signature mismatch")
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        self.try_add(&-rhs).expect("signature mismatch")
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        self.geometric_product(rhs).expect("signature mismatch")
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scale(-Rational::ONE)
    }
}
