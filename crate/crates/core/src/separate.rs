//! The end-to-end separation pipeline: given a nontrivial word in a matrix
//! group over a localized polynomial ring, produce and verify a certificate
//! exhibiting a finite quotient in which the word (or its derived-series
//! witness) survives.

use crate::error::{EnumError, SeparateError};
use crate::finite::{Elem, GroupTable};
use crate::matgroup::GroupSpec;
use crate::ring::{is_prime, parse::parse_multipoly, Char, MultiPoly, UniPoly};
use crate::specialize::{
    choose_irreducible, choose_prime, reduce_to_one_variable, specialize_group_char0,
    specialize_group_charp, IrreducibleChoice, PrimeChoice, ReductionResult, SpecializedGroup,
};
use crate::witness::{
    derived_witness, solvable_depth, witness_word_from_conjugators, MalabelianContext,
};
use crate::word::{display_word, parse_word, Word};
use num_bigint::BigInt;
use num_traits::One;

/// Pipeline mode: separate the element itself, or its derived-series witness
/// at the solvable depth of GL_l (which survives outside every solvable
/// normal subgroup of the quotient).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationMode {
    Direct,
    Semisimple,
}

impl SeparationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SeparationMode::Direct => "direct",
            SeparationMode::Semisimple => "semisimple",
        }
    }
}

/// The modulus data of a certificate: a prime with an evaluation point in
/// characteristic zero, an irreducible modulus polynomial in characteristic p.
#[derive(Debug, Clone)]
pub enum ModulusChoice {
    Prime(PrimeChoice),
    Irreducible(IrreducibleChoice),
}

/// Full audit record of one pipeline run.
#[derive(Debug, Clone)]
pub struct SeparationCertificate {
    pub word: Word,
    pub mode: SeparationMode,
    /// Witness level (0 in direct mode) and the conjugators that rebuild the
    /// witness word from the input.
    pub witness_level: usize,
    pub witness_conjugators: Vec<Word>,
    /// Letter count of the witness representative; the exponent on Phi.
    pub witness_len: usize,
    pub entry_row: usize,
    pub entry_col: usize,
    /// `f = Phi^|h| h_{row,col} - Phi^|h| delta_{row,col}`, nonzero.
    pub entry_poly: MultiPoly,
    pub reduction: ReductionResult,
    pub modulus: ModulusChoice,
    pub field_size: BigInt,
    /// `field_size^(l^2)`, the full GL_l order bound.
    pub order_bound: BigInt,
    pub transcript: Vec<String>,
}

impl SeparationCertificate {
    /// The witness word h (equals the input word in direct mode).
    pub fn witness_word(&self) -> Word {
        witness_word_from_conjugators(&self.word, &self.witness_conjugators)
    }
}

/// Run the separation pipeline on a word that is not the identity.
pub fn separate_element(
    spec: &GroupSpec,
    a: &Word,
    mode: SeparationMode,
) -> Result<SeparationCertificate, SeparateError> {
    let mut transcript = Vec::new();
    let m_a = spec.evaluate_word(a)?;
    if m_a.is_identity(&spec.denominators) {
        return Err(SeparateError::IdentityWord);
    }
    let names = spec.generator_names();
    let namef = |i: usize| names[i].clone();
    transcript.push(format!("input word: {}", display_word(a, &namef)));

    // Choose the witness.
    let (witness_level, witness_conjugators, h, m_h) = match mode {
        SeparationMode::Direct => (0usize, Vec::new(), a.clone(), m_a),
        SeparationMode::Semisimple => {
            let level = solvable_depth(spec.dimension);
            let ctx = MalabelianContext::matrix(spec);
            let rec = derived_witness(&ctx, a, level)?;
            transcript.push(format!(
                "witness level {level}; conjugators: {}",
                rec.conjugators
                    .iter()
                    .map(|k| display_word(k, &namef))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            let m_h = spec.evaluate_word(&rec.word)?;
            (level, rec.conjugators, rec.word, m_h)
        }
    };
    let witness_len = h.len();
    transcript.push(format!("witness length: {witness_len}"));

    // First nonzero entry of Phi^|h| (M_h - I), row-major.
    let cleared = spec.cleared_word_matrix(&m_h, witness_len)?;
    let phi_pow = spec.phi_product().pow(witness_len as u32);
    let dim = spec.dimension;
    let mut picked = None;
    'outer: for i in 0..dim {
        for j in 0..dim {
            let mut f = cleared[i * dim + j].clone();
            if i == j {
                f = f.sub(&phi_pow).expect("same ring");
            }
            if !f.is_zero() {
                picked = Some((i, j, f));
                break 'outer;
            }
        }
    }
    let (row, col, entry_poly) = picked.expect("a non-identity matrix differs somewhere");
    transcript.push(format!("entry ({row},{col}): f = {entry_poly}"));

    let reduction = reduce_to_one_variable(&entry_poly)?;
    transcript.push(format!(
        "reduction exponents: {:?}; trace degree {}",
        reduction.n_vec,
        reduction.trace_poly.degree()
    ));

    let (modulus, field_size, image) = match spec.characteristic {
        Char::Zero => {
            let choice = choose_prime(&reduction.trace_poly)?;
            transcript.push(format!(
                "evaluation point m = {}, prime p = {} (|g(m)| = {})",
                choice.m, choice.p, choice.value_abs
            ));
            let image = specialize_group_char0(spec, &reduction.n_vec, choice.m, choice.p)?;
            let fs = BigInt::from(choice.p);
            (ModulusChoice::Prime(choice), fs, image)
        }
        Char::Prime(_) => {
            let choice = choose_irreducible(&reduction.trace_poly)?;
            transcript.push(format!(
                "irreducible modulus w = {}, field size {}",
                choice.poly, choice.field_size
            ));
            let image = specialize_group_charp(spec, &reduction.n_vec, &choice)?;
            let fs = choice.field_size.clone();
            (ModulusChoice::Irreducible(choice), fs, image)
        }
    };

    // The pipeline guarantee: the specialized witness is not the identity.
    let image_h = image.evaluate_word(&h);
    assert!(
        !image_h.is_identity(),
        "pipeline invariant: the chosen modulus keeps the witness entry nonzero"
    );
    transcript.push("specialized witness is non-identity".to_string());

    let order_bound = field_size.pow((dim * dim) as u32);
    transcript.push(format!("order bound: {order_bound}"));

    Ok(SeparationCertificate {
        word: a.clone(),
        mode,
        witness_level,
        witness_conjugators,
        witness_len,
        entry_row: row,
        entry_col: col,
        entry_poly,
        reduction,
        modulus,
        field_size,
        order_bound,
        transcript,
    })
}

/// Outcome of re-checking a certificate. `ok` with no reason, or the first
/// failed step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationOutcome {
    pub ok: bool,
    pub reason: Option<String>,
}

impl VerificationOutcome {
    fn pass() -> Self {
        VerificationOutcome { ok: true, reason: None }
    }

    fn fail(reason: impl Into<String>) -> Self {
        VerificationOutcome { ok: false, reason: Some(reason.into()) }
    }
}

/// Recompute every pipeline step of a certificate from its recorded choices
/// (no searches) and confirm each one.
pub fn verify_certificate(spec: &GroupSpec, cert: &SeparationCertificate) -> VerificationOutcome {
    // 1. the input word is nontrivial
    let m_a = match spec.evaluate_word(&cert.word) {
        Ok(m) => m,
        Err(e) => return VerificationOutcome::fail(format!("word evaluation: {e}")),
    };
    if m_a.is_identity(&spec.denominators) {
        return VerificationOutcome::fail("input word evaluates to the identity");
    }
    // 2. witness reconstruction
    let h = cert.witness_word();
    if cert.mode == SeparationMode::Direct && cert.witness_level != 0 {
        return VerificationOutcome::fail("direct mode must have witness level 0");
    }
    if h.len() != cert.witness_len {
        return VerificationOutcome::fail("witness length mismatch");
    }
    let m_h = match spec.evaluate_word(&h) {
        Ok(m) => m,
        Err(e) => return VerificationOutcome::fail(format!("witness evaluation: {e}")),
    };
    if m_h.is_identity(&spec.denominators) {
        return VerificationOutcome::fail("witness word evaluates to the identity");
    }
    // 3. recorded entry polynomial matches Phi^|h| (M_h - I) at (row, col)
    let cleared = match spec.cleared_word_matrix(&m_h, cert.witness_len) {
        Ok(c) => c,
        Err(e) => return VerificationOutcome::fail(format!("denominator clearing: {e}")),
    };
    let dim = spec.dimension;
    if cert.entry_row >= dim || cert.entry_col >= dim {
        return VerificationOutcome::fail("entry indices out of range");
    }
    let mut f = cleared[cert.entry_row * dim + cert.entry_col].clone();
    if cert.entry_row == cert.entry_col {
        let phi_pow = spec.phi_product().pow(cert.witness_len as u32);
        f = f.sub(&phi_pow).expect("same ring");
    }
    if f != cert.entry_poly {
        return VerificationOutcome::fail("entry polynomial mismatch");
    }
    if f.is_zero() {
        return VerificationOutcome::fail("entry polynomial is zero");
    }
    // 4. trace polynomial
    let g = match f.substitute_powers(&cert.reduction.n_vec) {
        Ok(g) => g,
        Err(e) => return VerificationOutcome::fail(format!("substitution: {e}")),
    };
    if g.is_zero() {
        return VerificationOutcome::fail("trace polynomial vanishes");
    }
    if g != cert.reduction.trace_poly {
        return VerificationOutcome::fail("trace polynomial mismatch");
    }
    // 5. modulus condition and specialized image
    let image = match (&cert.modulus, spec.characteristic) {
        (ModulusChoice::Prime(choice), Char::Zero) => {
            if !is_prime(choice.p) {
                return VerificationOutcome::fail("modulus is not prime");
            }
            match crate::ring::unipoly_eval_mod(&g, choice.m as i64, choice.p) {
                Ok(0) => return VerificationOutcome::fail("modulus condition: g(m) = 0 mod p"),
                Ok(_) => {}
                Err(e) => return VerificationOutcome::fail(format!("evaluation: {e}")),
            }
            if cert.field_size != BigInt::from(choice.p) {
                return VerificationOutcome::fail("field size mismatch");
            }
            match specialize_group_char0(spec, &cert.reduction.n_vec, choice.m, choice.p) {
                Ok(im) => im,
                Err(e) => return VerificationOutcome::fail(format!("specialization: {e}")),
            }
        }
        (ModulusChoice::Irreducible(choice), Char::Prime(p)) => {
            if choice.p != p {
                return VerificationOutcome::fail("modulus characteristic mismatch");
            }
            let w = match choice.poly.to_fp() {
                Ok(w) => w,
                Err(e) => return VerificationOutcome::fail(format!("modulus: {e}")),
            };
            // irreducibility re-check by trial division (no search)
            let irr = crate::ring::FpPoly::enumerate_irreducibles(p, w.degree() / 2)
                .iter()
                .all(|v| !v.divides(&w));
            if !irr || w.degree() == 0 {
                return VerificationOutcome::fail("modulus polynomial is reducible");
            }
            let gf = match g.to_fp() {
                Ok(gf) => gf,
                Err(e) => return VerificationOutcome::fail(format!("trace: {e}")),
            };
            if w.divides(&gf) {
                return VerificationOutcome::fail("modulus condition: w divides g");
            }
            if cert.field_size != BigInt::from(p).pow(w.degree() as u32) {
                return VerificationOutcome::fail("field size mismatch");
            }
            match specialize_group_charp(spec, &cert.reduction.n_vec, choice) {
                Ok(im) => im,
                Err(e) => return VerificationOutcome::fail(format!("specialization: {e}")),
            }
        }
        _ => return VerificationOutcome::fail("modulus kind does not match the characteristic"),
    };
    if image.evaluate_word(&h).is_identity() {
        return VerificationOutcome::fail("specialized witness image is the identity");
    }
    // 6. order bound arithmetic
    let expected = cert.field_size.pow((dim * dim) as u32);
    if cert.order_bound != expected {
        return VerificationOutcome::fail("order bound arithmetic");
    }
    VerificationOutcome::pass()
}

/// Materialize the finite quotient of a certificate: the closure of the
/// specialized generator images, up to `cap` elements.
pub fn finite_image(
    spec: &GroupSpec,
    cert: &SeparationCertificate,
    cap: usize,
) -> Result<(GroupTable, SpecializedGroup), SeparateError> {
    let image = match (&cert.modulus, spec.characteristic) {
        (ModulusChoice::Prime(choice), Char::Zero) => {
            specialize_group_char0(spec, &cert.reduction.n_vec, choice.m, choice.p)?
        }
        (ModulusChoice::Irreducible(choice), Char::Prime(_)) => {
            specialize_group_charp(spec, &cert.reduction.n_vec, choice)?
        }
        _ => return Err(SeparateError::BadRecord("modulus kind mismatch".into())),
    };
    let gens: Vec<Elem> = image
        .generator_images
        .iter()
        .map(|m| Elem::Mat(m.clone()))
        .collect();
    let table = GroupTable::generate(format!("{}-image", spec.name), &gens, cap).map_err(|e| {
        match e {
            EnumError::Capacity { cap } => SeparateError::Capacity { cap },
            other => SeparateError::BadRecord(other.to_string()),
        }
    })?;
    Ok((table, image))
}

/// `D^n(normal closure of x in Q)` as a sorted element-index list. `n = 0`
/// returns the normal closure itself.
pub fn normal_closure_derived_depth(
    q: &GroupTable,
    x: usize,
    n: usize,
    cap: usize,
) -> Result<Vec<usize>, EnumError> {
    if q.order() > cap {
        return Err(EnumError::Capacity { cap });
    }
    let ambient: Vec<usize> = q.gens.clone();
    let mut gens = q.normal_closure_gens(&ambient, &[x]);
    for _ in 0..n {
        gens = q.derived_gens(&gens);
        if gens.is_empty() {
            break;
        }
    }
    Ok(q.subgroup(&gens))
}

/// Serialize a certificate as a line-oriented `key: value` record with a
/// stable field order.
pub fn certificate_to_record(spec: &GroupSpec, cert: &SeparationCertificate) -> String {
    let names = spec.generator_names();
    let namef = |i: usize| names[i].clone();
    let mut lines: Vec<(String, String)> = vec![
        ("record".into(), "separation-certificate/v1".into()),
        ("group".into(), spec.name.clone()),
        ("dimension".into(), spec.dimension.to_string()),
        ("characteristic".into(), spec.characteristic.to_string()),
        ("mode".into(), cert.mode.as_str().into()),
        ("word".into(), display_word(&cert.word, &namef)),
        ("witness-level".into(), cert.witness_level.to_string()),
        (
            "witness-conjugators".into(),
            if cert.witness_conjugators.is_empty() {
                "-".into()
            } else {
                cert.witness_conjugators
                    .iter()
                    .map(|k| display_word(k, &namef))
                    .collect::<Vec<_>>()
                    .join(", ")
            },
        ),
        ("witness-length".into(), cert.witness_len.to_string()),
        ("entry-row".into(), cert.entry_row.to_string()),
        ("entry-col".into(), cert.entry_col.to_string()),
        ("entry-poly".into(), cert.entry_poly.to_string()),
        (
            "reduction-nvec".into(),
            format!(
                "[{}]",
                cert.reduction
                    .n_vec
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ),
        ("trace-poly".into(), cert.reduction.trace_poly.to_string()),
    ];
    match &cert.modulus {
        ModulusChoice::Prime(c) => {
            lines.push(("modulus-kind".into(), "prime".into()));
            lines.push(("eval-point".into(), c.m.to_string()));
            lines.push(("prime".into(), c.p.to_string()));
        }
        ModulusChoice::Irreducible(c) => {
            lines.push(("modulus-kind".into(), "irreducible".into()));
            lines.push(("modulus-poly".into(), c.poly.to_string()));
        }
    }
    lines.push(("field-size".into(), cert.field_size.to_string()));
    lines.push(("order-bound".into(), cert.order_bound.to_string()));
    for (i, t) in cert.transcript.iter().enumerate() {
        lines.push((format!("note-{}", i + 1), t.clone()));
    }
    let mut out = String::new();
    for (k, v) in lines {
        out.push_str(&k);
        out.push_str(": ");
        out.push_str(&v);
        out.push('\n');
    }
    out
}

/// Parse a certificate record back. The spec must be the one the record was
/// produced against (matched by name).
pub fn certificate_from_record(
    spec: &GroupSpec,
    text: &str,
) -> Result<SeparationCertificate, SeparateError> {
    let mut map = std::collections::BTreeMap::new();
    for line in text.lines() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once(": ")
            .ok_or_else(|| SeparateError::BadRecord(format!("bad line {line:?}")))?;
        map.insert(k.to_string(), v.to_string());
    }
    let get = |k: &str| -> Result<&String, SeparateError> {
        map.get(k)
            .ok_or_else(|| SeparateError::BadRecord(format!("missing field {k}")))
    };
    if get("record")? != "separation-certificate/v1" {
        return Err(SeparateError::BadRecord("unknown record version".into()));
    }
    if get("group")? != &spec.name {
        return Err(SeparateError::BadRecord(format!(
            "record is for group {:?}, not {:?}",
            get("group")?,
            spec.name
        )));
    }
    let names = spec.generator_names();
    let bad = SeparateError::BadRecord;
    let word = parse_word(get("word")?, &names).map_err(bad)?;
    let mode = match get("mode")?.as_str() {
        "direct" => SeparationMode::Direct,
        "semisimple" => SeparationMode::Semisimple,
        other => return Err(SeparateError::BadRecord(format!("unknown mode {other}"))),
    };
    let witness_level: usize = get("witness-level")?
        .parse()
        .map_err(|_| SeparateError::BadRecord("bad witness-level".into()))?;
    let conj_field = get("witness-conjugators")?;
    let witness_conjugators: Vec<Word> = if conj_field == "-" {
        Vec::new()
    } else {
        conj_field
            .split(", ")
            .map(|s| parse_word(s, &names).map_err(SeparateError::BadRecord))
            .collect::<Result<_, _>>()?
    };
    let witness_len: usize = get("witness-length")?
        .parse()
        .map_err(|_| SeparateError::BadRecord("bad witness-length".into()))?;
    let entry_row: usize = get("entry-row")?
        .parse()
        .map_err(|_| SeparateError::BadRecord("bad entry-row".into()))?;
    let entry_col: usize = get("entry-col")?
        .parse()
        .map_err(|_| SeparateError::BadRecord("bad entry-col".into()))?;
    let entry_poly = parse_multipoly(get("entry-poly")?, spec.num_vars, spec.characteristic)
        .map_err(|e| SeparateError::BadRecord(e.to_string()))?;
    let nvec_text = get("reduction-nvec")?;
    let inner = nvec_text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| SeparateError::BadRecord("bad reduction-nvec".into()))?;
    let n_vec: Vec<u64> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| SeparateError::BadRecord("bad reduction-nvec".into()))?
    };
    let trace_poly = parse_trace(get("trace-poly")?, spec.characteristic)?;
    let modulus = match get("modulus-kind")?.as_str() {
        "prime" => {
            let m: u64 = get("eval-point")?
                .parse()
                .map_err(|_| SeparateError::BadRecord("bad eval-point".into()))?;
            let p: u64 = get("prime")?
                .parse()
                .map_err(|_| SeparateError::BadRecord("bad prime".into()))?;
            let value_abs = trace_poly
                .eval_int(&BigInt::from(m))
                .map(|v| if v < BigInt::from(0) { -v } else { v })
                .unwrap_or_else(|_| BigInt::one());
            ModulusChoice::Prime(PrimeChoice {
                m,
                p,
                value_abs,
                log2_max_coeff: 0.0,
                trace_degree: trace_poly.degree(),
            })
        }
        "irreducible" => {
            let poly = parse_trace(get("modulus-poly")?, spec.characteristic)?;
            let p = match spec.characteristic {
                Char::Prime(p) => p,
                Char::Zero => {
                    return Err(SeparateError::BadRecord(
                        "irreducible modulus in characteristic zero".into(),
                    ))
                }
            };
            let field_size = BigInt::from(p).pow(poly.degree() as u32);
            ModulusChoice::Irreducible(IrreducibleChoice { p, poly, field_size })
        }
        other => return Err(SeparateError::BadRecord(format!("unknown modulus kind {other}"))),
    };
    let field_size: BigInt = get("field-size")?
        .parse()
        .map_err(|_| SeparateError::BadRecord("bad field-size".into()))?;
    let order_bound: BigInt = get("order-bound")?
        .parse()
        .map_err(|_| SeparateError::BadRecord("bad order-bound".into()))?;
    let transcript: Vec<String> = (1..)
        .map_while(|i| map.get(&format!("note-{i}")).cloned())
        .collect();
    Ok(SeparationCertificate {
        word,
        mode,
        witness_level,
        witness_conjugators,
        witness_len,
        entry_row,
        entry_col,
        entry_poly,
        reduction: ReductionResult { n_vec, trace_poly, audit: Vec::new() },
        modulus,
        field_size,
        order_bound,
        transcript,
    })
}

fn parse_trace(text: &str, ch: Char) -> Result<UniPoly, SeparateError> {
    crate::ring::parse::parse_unipoly(text, ch)
        .map_err(|e| SeparateError::BadRecord(e.to_string()))
}
