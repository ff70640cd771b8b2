//! The quasi-symmetric generator construction. From an admissible
//! parameter set (r, m, N, q) and a diagonal value v, it builds the
//! r^m x r^m matrix P with entries phi(x_j - x_i) off the diagonal,
//! computes the eigenvalues of P P^T through Gauss sums, and certifies
//! either a trivial hull (LCD) or a one-dimensional hull for the code
//! generated by [I | P].

use crate::arith;
use crate::charsum::{gauss_sum, ChiHom, PhiHom};
use crate::field::{
    make_field, splitting_field, Embedding, Field, FieldElement, GeneratorChoice,
};
use crate::matrix::MatrixGF;
use crate::{Error, Result};
use serde::ser::{Serialize, SerializeStruct, Serializer};

/// How the elements of the source field are laid out along the rows and
/// columns of P.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// Enumeration order of the field (0 first).
    Natural,
    /// 0 first, then ascending powers of alpha.
    Log,
    /// Even powers of alpha, then odd powers, then 0. Only meaningful
    /// over an odd-characteristic source.
    SquaresFirst,
}

impl Ordering {
    pub fn as_str(&self) -> &'static str {
        match self {
            Ordering::Natural => "natural",
            Ordering::Log => "log",
            Ordering::SquaresFirst => "squares_first",
        }
    }
}

impl std::fmt::Display for Ordering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Ordering {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(Ordering::Natural),
            "log" => Ok(Ordering::Log),
            "squares_first" => Ok(Ordering::SquaresFirst),
            other => Err(Error::BadInput(format!(
                "unknown ordering {other:?} (expected natural, log, or squares_first)"
            ))),
        }
    }
}

/// A fully resolved construction: fields, generators, the character, the
/// layout, and the diagonal value.
#[derive(Debug, Clone)]
pub struct ConstructionParams {
    r: u64,
    m: u32,
    n: u64,
    source: Field,
    alphabet: Field,
    splitting: Field,
    t: u32,
    gens: GeneratorChoice,
    phi: PhiHom,
    embed: Embedding,
    ordering: Ordering,
    v: FieldElement,
}

/// One satisfied sufficient condition, labelled by a stable key.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Certificate {
    pub key: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    pub detail: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EigenReport {
    /// Eigenvalues of P P^T in the splitting field, indexed by the
    /// enumeration index of the additive-character parameter a.
    pub lambdas: Vec<FieldElement>,
    /// How many of them equal -1; this is the hull dimension of [I | P].
    pub minus_one_count: usize,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct EigenCrosscheck {
    pub minus_one_count: usize,
    pub gram_corank: usize,
}

/// Outcome of the diagonal-search variant of the construction.
#[derive(Debug, Clone)]
pub struct VChoiceB {
    pub v: FieldElement,
    pub excluded: Vec<FieldElement>,
    pub certificate: Certificate,
}

/// Outcome of the one-dimensional-hull diagonal choice.
#[derive(Debug, Clone)]
pub struct HullOneChoice {
    pub v: FieldElement,
    pub certificate: Option<Certificate>,
}

impl ConstructionParams {
    pub fn new(
        r: u64,
        m: u32,
        n: u64,
        alphabet: &Field,
        ordering: Ordering,
        v: Option<FieldElement>,
    ) -> Result<ConstructionParams> {
        if !arith::is_prime_u64(r) {
            return Err(Error::Inadmissible(format!("r = {r} is not prime")));
        }
        if n < 2 {
            return Err(Error::Inadmissible(format!("N = {n} must be at least 2")));
        }
        let source_order =
            arith::checked_pow_u128(r, m).ok_or(Error::FieldTooLarge(r, m))?;
        if (source_order - 1) % n as u128 != 0 {
            return Err(Error::Inadmissible(format!(
                "N = {n} does not divide r^m - 1 = {}",
                source_order - 1
            )));
        }
        let q = alphabet.order();
        if (q - 1) % n as u128 != 0 {
            return Err(Error::Inadmissible(format!(
                "N = {n} does not divide q - 1 = {}",
                q - 1
            )));
        }
        let p = alphabet.characteristic();
        if p == r {
            return Err(Error::Inadmissible(format!(
                "alphabet characteristic p = {p} must be coprime to r = {r}"
            )));
        }
        if ordering == Ordering::SquaresFirst && r == 2 {
            return Err(Error::Inadmissible(
                "squares_first ordering needs an odd-characteristic source".into(),
            ));
        }
        let source = make_field(r, m)?;
        let (splitting, t) = splitting_field(alphabet, r)?;
        let gens = GeneratorChoice::canonical(&source, alphabet, &splitting);
        let phi = PhiHom::new(&source, alphabet, n, &gens.alpha, &gens.beta)?;
        let embed = Embedding::new(alphabet, &splitting)?;
        let v = match v {
            Some(v) => {
                if v.field() != alphabet {
                    return Err(Error::FieldMismatch(
                        v.field().to_string(),
                        alphabet.to_string(),
                    ));
                }
                v
            }
            None => alphabet.zero(),
        };
        Ok(ConstructionParams {
            r,
            m,
            n,
            source,
            alphabet: alphabet.clone(),
            splitting,
            t,
            gens,
            phi,
            embed,
            ordering,
            v,
        })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn alphabet(&self) -> &Field {
        &self.alphabet
    }

    pub fn splitting(&self) -> &Field {
        &self.splitting
    }

    pub fn splitting_t(&self) -> u32 {
        self.t
    }

    pub fn generators(&self) -> &GeneratorChoice {
        &self.gens
    }

    pub fn phi(&self) -> &PhiHom {
        &self.phi
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embed
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn v(&self) -> &FieldElement {
        &self.v
    }

    pub fn source_order(&self) -> usize {
        self.source.order() as usize
    }

    pub fn with_v(&self, v: FieldElement) -> Result<ConstructionParams> {
        if v.field() != &self.alphabet {
            return Err(Error::FieldMismatch(
                v.field().to_string(),
                self.alphabet.to_string(),
            ));
        }
        let mut out = self.clone();
        out.v = v;
        Ok(out)
    }

    pub fn with_generators(
        &self,
        alpha: Option<FieldElement>,
        beta: Option<FieldElement>,
        gamma: Option<FieldElement>,
    ) -> Result<ConstructionParams> {
        let gens = GeneratorChoice::with_overrides(
            &self.source,
            &self.alphabet,
            &self.splitting,
            alpha,
            beta,
            gamma,
        )?;
        let phi = PhiHom::new(&self.source, &self.alphabet, self.n, &gens.alpha, &gens.beta)?;
        let mut out = self.clone();
        out.gens = gens;
        out.phi = phi;
        Ok(out)
    }

    /// The source-field elements in the order used for rows and columns
    /// of P.
    pub fn points(&self) -> Vec<FieldElement> {
        let rm = self.source_order();
        match self.ordering {
            Ordering::Natural => self.source.elements().collect(),
            Ordering::Log => {
                let mut pts = Vec::with_capacity(rm);
                pts.push(self.source.zero());
                let mut x = self.source.one();
                for _ in 0..rm - 1 {
                    pts.push(x.clone());
                    x = &x * &self.gens.alpha;
                }
                pts
            }
            Ordering::SquaresFirst => {
                let group = rm - 1;
                let mut pts = Vec::with_capacity(rm);
                for parity in [0usize, 1] {
                    let mut k = parity;
                    while k < group {
                        pts.push(self.gens.alpha.pow(k as u128));
                        k += 2;
                    }
                }
                pts.push(self.source.zero());
                pts
            }
        }
    }

    /// The [2 r^m, r^m] code generated by [I | P].
    pub fn build_code(&self) -> Result<crate::analysis::LinearCode> {
        crate::analysis::LinearCode::systematic(&self.build_p()?)
    }

    /// The matrix P: entries phi(x_j - x_i) off the diagonal, v on it.
    pub fn build_p(&self) -> Result<MatrixGF> {
        let pts = self.points();
        let rm = pts.len();
        let mut p = MatrixGF::zeros(&self.alphabet, rm, rm);
        for i in 0..rm {
            for j in 0..rm {
                let entry = if i == j {
                    self.v.clone()
                } else {
                    self.phi.eval(&(&pts[j] - &pts[i]))?
                };
                p.set(i, j, entry);
            }
        }
        Ok(p)
    }

    fn chi(&self, a: FieldElement) -> Result<ChiHom> {
        ChiHom::new(&self.source, &self.splitting, a, &self.gens.gamma)
    }

    /// Gauss sums g(phi, chi_a) for every a, indexed by the enumeration
    /// index of a, each computed by direct summation.
    pub fn gauss_table(&self) -> Result<Vec<FieldElement>> {
        self.source
            .elements()
            .map(|a| gauss_sum(&self.phi, &self.chi(a)?, &self.embed))
            .collect()
    }

    /// Eigenvalues of P P^T: lambda_0 = v^2, and for a != 0
    /// lambda_a = v^2 + (1 + phi(-1)) v g_a + phi(-1) g_a^2, all read in
    /// the splitting field.
    pub fn eigen_report(&self) -> Result<EigenReport> {
        let g = self.gauss_table()?;
        let v = self.embed.map(&self.v)?;
        let sign = self.embed.map(&self.phi.at_minus_one())?;
        let one = self.splitting.one();
        let minus_one = -&one;
        let v2 = &v * &v;
        let mut lambdas = Vec::with_capacity(g.len());
        lambdas.push(v2.clone());
        for ga in g.iter().skip(1) {
            let linear = &(&(&one + &sign) * &v) * ga;
            let quad = &sign * &(ga * ga);
            lambdas.push(&(&v2 + &linear) + &quad);
        }
        let minus_one_count = lambdas.iter().filter(|l| **l == minus_one).count();
        Ok(EigenReport {
            lambdas,
            minus_one_count,
        })
    }

    /// Confirms that the number of eigenvalues equal to -1 matches the
    /// corank of I + P P^T over the alphabet; the two are provably equal,
    /// so a mismatch is an internal error.
    pub fn eigen_rank_crosscheck(&self) -> Result<EigenCrosscheck> {
        let report = self.eigen_report()?;
        let p = self.build_p()?;
        let gram = MatrixGF::identity(&self.alphabet, p.nrows())
            .add(&p.mul(&p.transpose())?)?;
        let corank = p.nrows() - gram.rank();
        if corank != report.minus_one_count {
            return Err(Error::InternalInconsistency(format!(
                "eigenvalue count {} disagrees with Gram corank {corank}",
                report.minus_one_count
            )));
        }
        Ok(EigenCrosscheck {
            minus_one_count: report.minus_one_count,
            gram_corank: corank,
        })
    }

    fn default_s_max(&self) -> u64 {
        2 * self.n
    }

    /// Sufficient LCD conditions for the v = 0 construction, scanning
    /// s = 1..=s_max (default 2N) and reporting every s that certifies.
    pub fn check_thm_a(&self, s_max: Option<u64>) -> Result<Vec<Certificate>> {
        let s_max = s_max.unwrap_or_else(|| self.default_s_max());
        let p = self.alphabet.characteristic();
        let r_in_alphabet = self.alphabet.from_int(self.r % p);
        let rhs_b2 = r_in_alphabet.pow(2 * self.m as u128);
        let p_in_source = self.source.from_int(p);
        let mut out = Vec::new();
        for s in 1..=s_max {
            let ps_mod_n = arith::powmod_u64(p, s, self.n);
            if ps_mod_n == 1 {
                let x = p_in_source.pow(2 * s as u128);
                if !self.phi.eval(&x)?.is_one() {
                    out.push(Certificate {
                        key: "thm-A-branch-1".into(),
                        s: Some(s),
                        detail: format!(
                            "N divides p^{s} - 1 and phi(p^{}) != 1",
                            2 * s
                        ),
                    });
                }
            }
            if ps_mod_n == self.n - 1 {
                let x = p_in_source.pow(2 * s as u128).inv()?;
                if self.phi.eval(&x)? != rhs_b2 {
                    out.push(Certificate {
                        key: "thm-A-branch-2".into(),
                        s: Some(s),
                        detail: format!(
                            "N divides p^{s} + 1 and phi(p^-{}) != r^{}",
                            2 * s,
                            2 * self.m
                        ),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Integer-congruence versions of the same conditions; every
    /// certificate found here is implied by the corresponding branch of
    /// [`check_thm_a`].
    pub fn check_coro_a(&self, s_max: Option<u64>) -> Result<Vec<Certificate>> {
        let s_max = s_max.unwrap_or_else(|| self.default_s_max());
        let p = self.alphabet.characteristic();
        let group = (self.source.order() - 1) as u64;
        let mut out = Vec::new();
        for s in 1..=s_max {
            let ps_mod_n = arith::powmod_u64(p, s, self.n);
            if ps_mod_n == 1 {
                let e = 2 * s * (group / self.n);
                if arith::powmod_u64(p, e, self.r) != 1 {
                    out.push(Certificate {
                        key: "coro-A-branch-1".into(),
                        s: Some(s),
                        detail: format!("p^{e} is not 1 mod r"),
                    });
                }
            }
            if ps_mod_n == self.n - 1 {
                let e = 2 * self.m as u64 * self.n;
                if arith::powmod_u64(self.r, e, p) != 1 {
                    out.push(Certificate {
                        key: "coro-A-branch-2".into(),
                        s: Some(s),
                        detail: format!("r^{e} is not 1 mod p"),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Searches the alphabet in enumeration order for the least diagonal
    /// value v whose eigenvalues all avoid -1, which certifies a trivial
    /// hull outright. Requires q > 2(N + 1) so the search cannot fail.
    pub fn find_construction_b_v(&self) -> Result<VChoiceB> {
        let q = self.alphabet.order();
        let bound = 2 * (self.n as u128 + 1);
        if q <= bound {
            return Err(Error::Inadmissible(format!(
                "diagonal search needs q > 2(N + 1) = {bound}, got q = {q}"
            )));
        }
        let g1 = gauss_sum(&self.phi, &self.chi(self.source.one())?, &self.embed)?;
        let sign = self.embed.map(&self.phi.at_minus_one())?;
        let one = self.splitting.one();
        let minus_one = -&one;
        let phi_conj = self.phi.conjugate();
        let ws: Vec<FieldElement> = self
            .source
            .elements()
            .skip(1)
            .map(|a| Ok(&self.embed.map(&phi_conj.eval(&a)?)? * &g1))
            .collect::<Result<_>>()?;
        let mut excluded = Vec::new();
        let mut chosen = None;
        for v_cand in self.alphabet.elements() {
            let x = self.embed.map(&v_cand)?;
            let x2 = &x * &x;
            let mut bad = x2 == minus_one; // the a = 0 polynomial x^2
            if !bad {
                for w in &ws {
                    let linear = &(&(&one + &sign) * w) * &x;
                    let quad = &sign * &(w * w);
                    if &(&x2 + &linear) + &quad == minus_one {
                        bad = true;
                        break;
                    }
                }
            }
            if bad {
                excluded.push(v_cand);
            } else if chosen.is_none() {
                chosen = Some(v_cand);
            }
        }
        let v = chosen.ok_or_else(|| {
            Error::InternalInconsistency(
                "every diagonal value was excluded despite q > 2(N + 1)".into(),
            )
        })?;
        Ok(VChoiceB {
            v,
            excluded,
            certificate: Certificate {
                key: "thm-B".into(),
                s: None,
                detail: "all eigenvalues of P P^T avoid -1 for the chosen v".into(),
            },
        })
    }

    /// Picks the diagonal value that forces a one-dimensional hull:
    /// v = 1 in characteristic 2, otherwise a fourth root of unity
    /// (requires 4 | q - 1). The accompanying certificate, when present,
    /// guarantees the hull dimension is exactly 1.
    pub fn find_one_dim_hull_v(&self) -> Result<HullOneChoice> {
        let p = self.alphabet.characteristic();
        if p == 2 {
            return Ok(HullOneChoice {
                v: self.alphabet.one(),
                certificate: Some(Certificate {
                    key: "thm-hull1-char2".into(),
                    s: None,
                    detail: "v = 1 over an even alphabet".into(),
                }),
            });
        }
        let q = self.alphabet.order();
        if (q - 1) % 4 != 0 {
            return Err(Error::Inadmissible(format!(
                "one-dimensional hull over an odd alphabet needs 4 | q - 1, got q = {q}"
            )));
        }
        let v = self.gens.beta.pow((q - 1) / 4);
        let index = (self.source.order() - 1) / self.n as u128;
        if index % 2 == 1 {
            return Ok(HullOneChoice {
                v,
                certificate: Some(Certificate {
                    key: "thm-hull1-odd".into(),
                    s: None,
                    detail: "(r^m - 1)/N is odd".into(),
                }),
            });
        }
        let q_in_source = self.source.from_int((q % self.r as u128) as u64);
        if !self.phi.eval(&q_in_source)?.is_one() {
            return Ok(HullOneChoice {
                v,
                certificate: Some(Certificate {
                    key: "coro-hull1-phi-q".into(),
                    s: None,
                    detail: "phi(q) != 1".into(),
                }),
            });
        }
        let g = self.gauss_table()?;
        let vs = self.embed.map(&v)?;
        let two_v = &vs + &vs;
        if g.iter().skip(1).all(|ga| !(&two_v + ga).is_zero()) {
            return Ok(HullOneChoice {
                v,
                certificate: Some(Certificate {
                    key: "thm-hull1-even".into(),
                    s: None,
                    detail: "2v + g_a != 0 for every a != 0".into(),
                }),
            });
        }
        Ok(HullOneChoice {
            v,
            certificate: None,
        })
    }
}

impl Serialize for ConstructionParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConstructionParams", 12)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("q", &self.alphabet.order())?;
        st.serialize_field("ordering", self.ordering.as_str())?;
        st.serialize_field("v", &self.v)?;
        st.serialize_field("source_field", &**self.source())?;
        st.serialize_field("alphabet_field", &**self.alphabet())?;
        st.serialize_field("splitting_field", &**self.splitting())?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("alpha", &self.gens.alpha)?;
        st.serialize_field("beta", &self.gens.beta)?;
        st.serialize_field("gamma", &self.gens.gamma)?;
        st.end()
    }
}
