//! Multiplicative characters of the source field with values in the
//! alphabet field, additive characters with values in the splitting
//! field, and the Gauss sums pairing them. Gauss sums are always
//! evaluated by direct summation; the classical identities relating
//! them are *checked* (see [`verify_identities`]), never assumed.

use crate::field::{Embedding, Field, FieldElement, GeneratorChoice};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

const DLOG_TABLE_CAP: u128 = 1 << 20;

/// A multiplicative character of order `N` on the source field,
/// determined by sending the chosen generator `alpha` to
/// `u = beta^((q-1)/N)` in the alphabet field.
#[derive(Debug, Clone)]
pub struct PhiHom {
    source: Field,
    target: Field,
    order: u64,
    u: FieldElement,
    dlog: Arc<HashMap<u128, u64>>,
}

impl PhiHom {
    pub fn new(
        source: &Field,
        target: &Field,
        n: u64,
        alpha: &FieldElement,
        beta: &FieldElement,
    ) -> Result<PhiHom> {
        if n < 2 {
            return Err(Error::Inadmissible(format!(
                "character order N = {n} must be at least 2"
            )));
        }
        let group = source.order() - 1;
        if group % n as u128 != 0 {
            return Err(Error::Inadmissible(format!(
                "N = {n} does not divide |{source}*| = {group}"
            )));
        }
        let alphabet_group = target.order() - 1;
        if alphabet_group % n as u128 != 0 {
            return Err(Error::Inadmissible(format!(
                "N = {n} does not divide |{target}*| = {alphabet_group}"
            )));
        }
        if alpha.field() != source {
            return Err(Error::FieldMismatch(
                alpha.field().to_string(),
                source.to_string(),
            ));
        }
        if beta.field() != target {
            return Err(Error::FieldMismatch(
                beta.field().to_string(),
                target.to_string(),
            ));
        }
        let u = beta.pow(alphabet_group / n as u128);
        let dlog = discrete_log_table(source, alpha)?;
        Ok(PhiHom {
            source: source.clone(),
            target: target.clone(),
            order: n,
            u,
            dlog,
        })
    }

    /// The trivial character (order 1), constant 1 on nonzero arguments.
    pub fn trivial(source: &Field, target: &Field) -> Result<PhiHom> {
        let alpha = source.primitive_element();
        let dlog = discrete_log_table(source, &alpha)?;
        Ok(PhiHom {
            source: source.clone(),
            target: target.clone(),
            order: 1,
            u: target.one(),
            dlog,
        })
    }

    /// The character x -> phi(x)^j. Shares the discrete log table.
    pub fn power(&self, j: u64) -> PhiHom {
        let mut out = self.clone();
        out.u = self.u.pow(j as u128);
        let g = crate::arith::gcd_u64(self.order, j % self.order.max(1));
        out.order = if j % self.order == 0 { 1 } else { self.order / g };
        out
    }

    pub fn conjugate(&self) -> PhiHom {
        let mut out = self.clone();
        out.u = self.u.pow((self.order as u128).saturating_sub(1).max(1));
        out
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.u.is_one()
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != &self.source {
            return Err(Error::FieldMismatch(
                x.field().to_string(),
                self.source.to_string(),
            ));
        }
        if x.is_zero() {
            return Err(Error::BadInput(
                "multiplicative character undefined at 0".into(),
            ));
        }
        let k = self.dlog[&x.index()];
        Ok(self.u.pow(k as u128))
    }

    /// phi(-1), a frequently needed sign.
    pub fn at_minus_one(&self) -> FieldElement {
        let minus_one = -&self.source.one();
        self.eval(&minus_one).expect("-1 is nonzero")
    }
}

fn discrete_log_table(source: &Field, alpha: &FieldElement) -> Result<Arc<HashMap<u128, u64>>> {
    let group = source.order() - 1;
    if group > DLOG_TABLE_CAP {
        return Err(Error::SearchTooLarge(source.order()));
    }
    let mut dlog = HashMap::with_capacity(group as usize);
    let mut x = source.one();
    for k in 0..group as u64 {
        if dlog.insert(x.index(), k).is_some() {
            return Err(Error::BadInput(format!(
                "alpha = {alpha} does not generate the multiplicative group of {source}"
            )));
        }
        x = &x * alpha;
    }
    Ok(Arc::new(dlog))
}

/// The additive character x -> zeta^Tr(a x) of the source field, valued
/// in the splitting field, where zeta = gamma^((q^t - 1)/r) is a fixed
/// primitive r-th root of unity.
#[derive(Debug, Clone)]
pub struct ChiHom {
    source: Field,
    target: Field,
    a: FieldElement,
    zeta: FieldElement,
}

impl ChiHom {
    pub fn new(
        source: &Field,
        target: &Field,
        a: FieldElement,
        gamma: &FieldElement,
    ) -> Result<ChiHom> {
        if a.field() != source {
            return Err(Error::FieldMismatch(
                a.field().to_string(),
                source.to_string(),
            ));
        }
        if gamma.field() != target {
            return Err(Error::FieldMismatch(
                gamma.field().to_string(),
                target.to_string(),
            ));
        }
        let r = source.characteristic() as u128;
        let group = target.order() - 1;
        if group % r != 0 {
            return Err(Error::Inadmissible(format!(
                "{target} contains no nontrivial {r}-th roots of unity"
            )));
        }
        Ok(ChiHom {
            source: source.clone(),
            target: target.clone(),
            zeta: gamma.pow(group / r),
            a,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero()
    }

    /// The character x -> chi(x)^j, which is again additive with
    /// parameter j*a.
    pub fn power(&self, j: u64) -> ChiHom {
        let mut out = self.clone();
        out.a = &self.a * &self.source.from_int(j);
        out
    }

    /// chi_{ab} from chi_a.
    pub fn translate(&self, b: &FieldElement) -> Result<ChiHom> {
        if b.field() != &self.source {
            return Err(Error::FieldMismatch(
                b.field().to_string(),
                self.source.to_string(),
            ));
        }
        let mut out = self.clone();
        out.a = &self.a * b;
        Ok(out)
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != &self.source {
            return Err(Error::FieldMismatch(
                x.field().to_string(),
                self.source.to_string(),
            ));
        }
        let t = (&self.a * x).trace_to_prime();
        Ok(self.zeta.pow(t as u128))
    }
}

/// g(phi, chi) = sum over nonzero x of phi(x) chi(x), computed by direct
/// summation in the splitting field. `embed` carries the alphabet into
/// the splitting field.
pub fn gauss_sum(phi: &PhiHom, chi: &ChiHom, embed: &Embedding) -> Result<FieldElement> {
    check_compatible(phi, chi, embed)?;
    let mut acc = chi.target.zero();
    for x in phi.source.elements().skip(1) {
        let pv = embed.map(&phi.eval(&x)?)?;
        let cv = chi.eval(&x)?;
        acc = &acc + &(&pv * &cv);
    }
    Ok(acc)
}

/// The companion sum over phi(x^-1) chi(-x), conventionally written with
/// a bar; the product with [`gauss_sum`] recovers the field size.
pub fn gauss_sum_conjugate(phi: &PhiHom, chi: &ChiHom, embed: &Embedding) -> Result<FieldElement> {
    check_compatible(phi, chi, embed)?;
    let mut acc = chi.target.zero();
    for x in phi.source.elements().skip(1) {
        let pv = embed.map(&phi.eval(&x.inv()?)?)?;
        let cv = chi.eval(&(-&x))?;
        acc = &acc + &(&pv * &cv);
    }
    Ok(acc)
}

fn check_compatible(phi: &PhiHom, chi: &ChiHom, embed: &Embedding) -> Result<()> {
    if phi.source != chi.source {
        return Err(Error::FieldMismatch(
            phi.source.to_string(),
            chi.source.to_string(),
        ));
    }
    if embed.source() != &phi.target || embed.target() != &chi.target {
        return Err(Error::FieldMismatch(
            embed.source().to_string(),
            phi.target.to_string(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub checked_count: u64,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identities: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn total_failures(&self) -> usize {
        self.identities.iter().map(|c| c.failures.len()).sum()
    }
}

/// Exhaustively checks the classical character-sum identities for one
/// admissible parameter set, reporting every violation rather than
/// stopping at the first.
pub fn verify_identities(
    source: &Field,
    alphabet: &Field,
    splitting: &Field,
    n: u64,
    gens: &GeneratorChoice,
) -> Result<IdentityReport> {
    let embed = Embedding::new(alphabet, splitting)?;
    let rm = source.order();
    let rm_usize = usize::try_from(rm).map_err(|_| Error::SearchTooLarge(rm))?;
    let p = splitting.characteristic();

    let base_phi = PhiHom::new(source, alphabet, n, &gens.alpha, &gens.beta)?;
    let phis: Vec<PhiHom> = (0..n).map(|j| base_phi.power(j)).collect();
    let elems: Vec<FieldElement> = source.elements().collect();
    let chis: Vec<ChiHom> = elems
        .iter()
        .map(|a| ChiHom::new(source, splitting, a.clone(), &gens.gamma))
        .collect::<Result<_>>()?;

    let mut g = vec![vec![splitting.zero(); rm_usize]; n as usize];
    let mut g_bar = vec![vec![splitting.zero(); rm_usize]; n as usize];
    for (j, phi) in phis.iter().enumerate() {
        for (i, chi) in chis.iter().enumerate() {
            g[j][i] = gauss_sum(phi, chi, &embed)?;
            g_bar[j][i] = gauss_sum_conjugate(phi, chi, &embed)?;
        }
    }
    let sign: Vec<FieldElement> = phis
        .iter()
        .map(|phi| embed.map(&phi.at_minus_one()))
        .collect::<Result<_>>()?;
    let rm_elem = splitting.from_int((rm % p as u128) as u64);
    let idx_of = |e: &FieldElement| e.index() as usize;

    let mut report = IdentityReport { identities: Vec::new() };

    // Multiplicative orthogonality: the sum of phi^j over nonzero x is
    // |F*| for j = 0 and vanishes otherwise.
    let mut check = IdentityCheck {
        name: "phi-orthogonality".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    for (j, phi) in phis.iter().enumerate() {
        let mut acc = alphabet.zero();
        for x in elems.iter().skip(1) {
            acc = &acc + &phi.eval(x)?;
        }
        let expect = if j == 0 {
            alphabet.from_int(((rm - 1) % alphabet.characteristic() as u128) as u64)
        } else {
            alphabet.zero()
        };
        check.checked_count += 1;
        if acc != expect {
            check.failures.push(format!("sum of phi^{j} = {acc}, expected {expect}"));
        }
    }
    report.identities.push(check);

    // Additive orthogonality: the sum of chi_a over the whole field is
    // |F| for a = 0 and vanishes otherwise.
    let mut check = IdentityCheck {
        name: "chi-orthogonality".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    for (i, chi) in chis.iter().enumerate() {
        let mut acc = splitting.zero();
        for x in &elems {
            acc = &acc + &chi.eval(x)?;
        }
        let expect = if i == 0 { rm_elem.clone() } else { splitting.zero() };
        check.checked_count += 1;
        if acc != expect {
            check.failures.push(format!("sum of chi_a, a = {} -> {acc}", elems[i]));
        }
    }
    report.identities.push(check);

    // Degenerate Gauss sums: both characters trivial gives |F*|; trivial
    // phi with nontrivial chi gives -1; nontrivial phi with trivial chi
    // gives 0.
    let mut check = IdentityCheck {
        name: "gauss-degenerate-values".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    let minus_one = -&splitting.one();
    for (j, row) in g.iter().enumerate() {
        for (i, val) in row.iter().enumerate() {
            let expect = match (j == 0, i == 0) {
                (true, true) => &rm_elem - &splitting.one(),
                (true, false) => minus_one.clone(),
                (false, true) => splitting.zero(),
                (false, false) => continue,
            };
            check.checked_count += 1;
            if *val != expect {
                check
                    .failures
                    .push(format!("g(phi^{j}, chi_{}) = {val}, expected {expect}", elems[i]));
            }
        }
    }
    report.identities.push(check);

    // g times its companion recovers the field size (nondegenerate pairs).
    let mut check = IdentityCheck {
        name: "gauss-times-conjugate".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    for j in 1..n as usize {
        for i in 1..rm_usize {
            check.checked_count += 1;
            if &g[j][i] * &g_bar[j][i] != rm_elem {
                check
                    .failures
                    .push(format!("g * g-bar at (phi^{j}, chi_{})", elems[i]));
            }
        }
    }
    report.identities.push(check);

    // chi_a conjugate is chi_{-a}: g(phi, chi_{-a}) = phi(-1) g(phi, chi_a).
    let mut check = IdentityCheck {
        name: "transform-conjugate-chi".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    for j in 0..n as usize {
        for (i, a) in elems.iter().enumerate() {
            let neg = idx_of(&-a);
            check.checked_count += 1;
            if g[j][neg] != &sign[j] * &g[j][i] {
                check.failures.push(format!("(phi^{j}, chi_{})", elems[i]));
            }
        }
    }
    report.identities.push(check);

    // g(phi conjugate, chi) = phi(-1) g-bar(phi, chi).
    let mut check = IdentityCheck {
        name: "transform-conjugate-phi".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    for j in 0..n as usize {
        let jc = (n as usize - j) % n as usize;
        for i in 0..rm_usize {
            check.checked_count += 1;
            if g[jc][i] != &sign[j] * &g_bar[j][i] {
                check.failures.push(format!("(phi^{j}, chi_{})", elems[i]));
            }
        }
    }
    report.identities.push(check);

    // g(phi, chi) g(phi conjugate, chi) = phi(-1) |F| for nondegenerate pairs.
    let mut check = IdentityCheck {
        name: "transform-product".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    for j in 1..n as usize {
        let jc = n as usize - j;
        for i in 1..rm_usize {
            check.checked_count += 1;
            if &g[j][i] * &g[jc][i] != &sign[j] * &rm_elem {
                check.failures.push(format!("(phi^{j}, chi_{})", elems[i]));
            }
        }
    }
    report.identities.push(check);

    // Frobenius: g^(p^s) = g(phi^(p^s), chi^(p^s)) in characteristic p.
    let mut check = IdentityCheck {
        name: "transform-frobenius".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    for s in 1..=2u32 {
        let ps = p.pow(s);
        for j in 0..n as usize {
            for (i, chi) in chis.iter().enumerate() {
                let lhs = g[j][i].pow(ps as u128);
                let phi_ps = phis[j].power(ps);
                let chi_ps = chi.power(ps);
                let rhs = gauss_sum(&phi_ps, &chi_ps, &embed)?;
                check.checked_count += 1;
                if lhs != rhs {
                    check
                        .failures
                        .push(format!("s = {s} at (phi^{j}, chi_{})", elems[i]));
                }
            }
        }
    }
    report.identities.push(check);

    // Translation: g(phi, chi_{ab}) = phi-conjugate(b) g(phi, chi_a).
    let mut check = IdentityCheck {
        name: "translation".into(),
        checked_count: 0,
        failures: Vec::new(),
    };
    for j in 0..n as usize {
        let phi_conj = phis[j].conjugate();
        for (i, a) in elems.iter().enumerate().skip(1) {
            for b in elems.iter().skip(1) {
                let ab = idx_of(&(a * b));
                let factor = embed.map(&phi_conj.eval(b)?)?;
                check.checked_count += 1;
                if g[j][ab] != &factor * &g[j][i] {
                    check
                        .failures
                        .push(format!("(phi^{j}, a = {a}, b = {b})"));
                }
            }
        }
    }
    report.identities.push(check);

    Ok(report)
}
