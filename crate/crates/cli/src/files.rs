//! Parsers for the on-disk formats: group files, catalog extension files,
//! and automorphism rule files.

use anyhow::{anyhow, bail, Context, Result};
use resfin::finite::{perm_from_cycles, Elem, GroupTable};
use resfin::matgroup::{GroupSpec, Matrix};
use resfin::rfgrowth::{AutRule, ClassTag, QuotientCatalog};
use resfin::ring::parse::parse_multipoly;
use resfin::ring::{Char, DenominatorSet, LocalizedElem, MultiPoly};
use resfin::word::parse_word;

/// Parse a group file:
///
/// ```text
/// ring char=0 vars=1 denoms=[T1]
/// dim 2
/// gen A = [[1, 2*T1],[0,1]]   inv Ainv = [[1, -2*T1],[0,1]]
/// ```
///
/// Entries are polynomial literals, optionally divided by a product of
/// powers of declared denominators (e.g. `1/T1` or `(T1+1)/(T1*(T1+1)^2)`).
pub fn parse_group_file(name: &str, text: &str) -> Result<GroupSpec> {
    let mut characteristic = None;
    let mut num_vars = None;
    let mut denoms: Option<DenominatorSet> = None;
    let mut dim = None;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let at = |msg: &str| anyhow!("line {}: {}", lineno + 1, msg);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ring ") {
            let (ch, vars, set) = parse_ring_line(rest).map_err(|e| at(&e.to_string()))?;
            characteristic = Some(ch);
            num_vars = Some(vars);
            denoms = Some(set);
        } else if let Some(rest) = line.strip_prefix("dim ") {
            dim = Some(rest.trim().parse::<usize>().map_err(|_| at("bad dimension"))?);
        } else if let Some(rest) = line.strip_prefix("gen ") {
            let ch = characteristic.ok_or_else(|| at("gen before ring line"))?;
            let vars = num_vars.unwrap();
            let set = denoms.as_ref().unwrap();
            let d = dim.ok_or_else(|| at("gen before dim line"))?;
            let pair =
                parse_gen_line(rest, d, vars, ch, set).map_err(|e| at(&e.to_string()))?;
            pairs.push(pair);
        } else {
            bail!("line {}: unrecognized directive {:?}", lineno + 1, line);
        }
    }
    let ch = characteristic.context("missing ring line")?;
    let spec = GroupSpec::new(
        name,
        dim.context("missing dim line")?,
        ch,
        num_vars.unwrap(),
        denoms.unwrap(),
        pairs,
    )?;
    Ok(spec)
}

fn parse_ring_line(rest: &str) -> Result<(Char, usize, DenominatorSet)> {
    let mut ch = None;
    let mut vars = None;
    let mut denom_text = None;
    for field in split_fields(rest) {
        let (k, v) = field
            .split_once('=')
            .with_context(|| format!("bad ring field {field:?}"))?;
        match k.trim() {
            "char" => {
                let c: u64 = v.trim().parse().context("bad characteristic")?;
                ch = Some(if c == 0 {
                    Char::Zero
                } else if resfin::ring::is_prime(c) {
                    Char::Prime(c)
                } else {
                    bail!("characteristic {c} is not prime");
                });
            }
            "vars" => vars = Some(v.trim().parse::<usize>().context("bad vars")?),
            "denoms" => denom_text = Some(v.trim().to_string()),
            other => bail!("unknown ring field {other:?}"),
        }
    }
    let ch = ch.context("ring line needs char=")?;
    let vars = vars.context("ring line needs vars=")?;
    let denom_text = denom_text.context("ring line needs denoms=[...]")?;
    let inner = denom_text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .context("denoms must be bracketed")?;
    let mut polys = Vec::new();
    for part in split_top_level(inner, ',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        polys.push(parse_multipoly(part, vars, ch).map_err(|e| anyhow!("{e}"))?);
    }
    Ok((ch, vars, DenominatorSet::new(polys)?))
}

/// Split `key=value` fields where the value may contain brackets (the denoms
/// list); fields are whitespace-separated at bracket depth 0.
fn split_fields(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

type GenPair = (String, Matrix, String, Matrix);

fn parse_gen_line(
    rest: &str,
    dim: usize,
    vars: usize,
    ch: Char,
    denoms: &DenominatorSet,
) -> Result<GenPair> {
    // <NAME> = <matrix> inv <NAME> = <matrix>
    let inv_pos = find_top_level_inv(rest).context("gen line needs an `inv` clause")?;
    let (gen_part, inv_part) = rest.split_at(inv_pos);
    let inv_part = inv_part.trim_start().strip_prefix("inv").unwrap().trim();
    let (gname, gmat) = parse_named_matrix(gen_part.trim(), dim, vars, ch, denoms)?;
    let (iname, imat) = parse_named_matrix(inv_part, dim, vars, ch, denoms)?;
    Ok((gname, gmat, iname, imat))
}

fn find_top_level_inv(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'[' | b'(' => depth += 1,
            b']' | b')' => depth -= 1,
            b'i' if depth == 0 && s[i..].starts_with("inv")
                && (i == 0 || bytes[i - 1].is_ascii_whitespace())
                && s[i + 3..].starts_with(char::is_whitespace) =>
            {
                return Some(i);
            }
            _ => {}
        }
        i += 1;
    }
    None
}

fn parse_named_matrix(
    s: &str,
    dim: usize,
    vars: usize,
    ch: Char,
    denoms: &DenominatorSet,
) -> Result<(String, Matrix)> {
    let (name, matrix_text) = s
        .split_once('=')
        .with_context(|| format!("expected NAME = [[...]] in {s:?}"))?;
    let name = name.trim().to_string();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        bail!("bad generator name {name:?}");
    }
    let m = parse_matrix(matrix_text.trim(), dim, vars, ch, denoms)?;
    Ok((name, m))
}

fn parse_matrix(
    s: &str,
    dim: usize,
    vars: usize,
    ch: Char,
    denoms: &DenominatorSet,
) -> Result<Matrix> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .with_context(|| format!("matrix must be bracketed: {s:?}"))?;
    let rows_text = split_top_level(inner, ',');
    // rows are themselves bracketed, so a row split at depth 0 keeps each
    // `[...]` intact
    let mut rows = Vec::new();
    for row_text in rows_text {
        let row_text = row_text.trim();
        if row_text.is_empty() {
            continue;
        }
        let row_inner = row_text
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .with_context(|| format!("row must be bracketed: {row_text:?}"))?;
        let mut row = Vec::new();
        for entry in split_top_level(row_inner, ',') {
            row.push(parse_entry(entry.trim(), vars, ch, denoms)?);
        }
        rows.push(row);
    }
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        bail!("matrix is not {dim}x{dim}");
    }
    Ok(Matrix::from_rows(rows)?)
}

/// `poly` or `poly / denominator-product`. The denominator is matched
/// structurally against the declared set: a product of factors, each a
/// parenthesized or bare polynomial equal to a member of S, with an optional
/// positive power.
fn parse_entry(
    s: &str,
    vars: usize,
    ch: Char,
    denoms: &DenominatorSet,
) -> Result<LocalizedElem> {
    let parts = split_top_level(s, '/');
    match parts.len() {
        1 => {
            let num = parse_multipoly(parts[0].trim(), vars, ch).map_err(|e| anyhow!("{e}"))?;
            Ok(LocalizedElem::from_poly(num))
        }
        2 => {
            let num = parse_multipoly(parts[0].trim(), vars, ch).map_err(|e| anyhow!("{e}"))?;
            let den = parse_denominator(parts[1].trim(), vars, ch, denoms)?;
            Ok(LocalizedElem::new(num, den, denoms)?)
        }
        _ => bail!("entry {s:?} has more than one '/'"),
    }
}

fn parse_denominator(
    s: &str,
    vars: usize,
    ch: Char,
    denoms: &DenominatorSet,
) -> Result<resfin::ring::localized::DenomPowers> {
    // strip one optional outer paren layer around the whole product
    let body = strip_matched_parens(s);
    let mut powers = resfin::ring::localized::DenomPowers::new();
    for factor in split_top_level(body, '*') {
        let factor = factor.trim();
        if factor.is_empty() {
            bail!("empty denominator factor");
        }
        let (base_text, exp) = match split_top_level(factor, '^').as_slice() {
            [b] => (b.trim().to_string(), 1u32),
            [b, e] => (
                b.trim().to_string(),
                e.trim().parse::<u32>().context("bad denominator power")?,
            ),
            _ => bail!("bad denominator factor {factor:?}"),
        };
        let base = strip_matched_parens(&base_text);
        let poly: MultiPoly = parse_multipoly(base, vars, ch).map_err(|e| anyhow!("{e}"))?;
        let idx = denoms
            .index_of(&poly)
            .with_context(|| format!("denominator {base:?} is not in the declared set"))?;
        *powers.entry(idx).or_insert(0) += exp;
    }
    Ok(powers)
}

fn strip_matched_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        // confirm the opening paren matches the final one
        let mut depth = 0i32;
        for (i, c) in t.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 && i != t.len() - 1 {
                        return t;
                    }
                }
                _ => {}
            }
        }
        return t[1..t.len() - 1].trim();
    }
    t
}

/// Parse a catalog extension file: groups given by permutation generators in
/// 1-based cycle notation.
///
/// ```text
/// group MyGroup class=lie ext=2
/// gen (1 2)(3 4)
/// gen (1 2 3)
/// end
/// ```
type PendingGroup = (String, ClassTag, Vec<Vec<Vec<u16>>>);

pub fn parse_catalog_file(text: &str) -> Result<Vec<(GroupTable, ClassTag)>> {
    let mut out = Vec::new();
    let mut current: Option<PendingGroup> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("group ") {
            if current.is_some() {
                bail!("line {}: nested group", lineno + 1);
            }
            let mut fields = rest.split_whitespace();
            let name = fields.next().context("group needs a name")?.to_string();
            let mut class = ClassTag::Any;
            let mut ext = 1u32;
            let mut kind = "any".to_string();
            for f in fields {
                let (k, v) = f.split_once('=').with_context(|| format!("bad field {f:?}"))?;
                match k {
                    "class" => kind = v.to_string(),
                    "ext" => ext = v.parse().context("bad ext")?,
                    other => bail!("unknown group field {other:?}"),
                }
            }
            match kind.as_str() {
                "any" => {}
                "lie" => class = ClassTag::SimpleLie { ext_degree: ext },
                "lie-product" => class = ClassTag::ProductOfLie { max_ext_degree: ext },
                other => bail!("unknown class {other:?}"),
            }
            current = Some((name, class, Vec::new()));
        } else if let Some(rest) = line.strip_prefix("gen ") {
            let cur = current
                .as_mut()
                .with_context(|| format!("line {}: gen outside group", lineno + 1))?;
            cur.2.push(parse_cycles(rest.trim())?);
        } else if line == "end" {
            let (name, class, cycles) = current.take().context("end without group")?;
            let degree = cycles
                .iter()
                .flatten()
                .flatten()
                .copied()
                .max()
                .map(|m| m as usize + 1)
                .unwrap_or(1);
            let gens: Vec<Elem> = cycles
                .iter()
                .map(|cs| perm_from_cycles(degree, cs))
                .collect();
            let table = GroupTable::generate(name, &gens, 1_000_000)
                .map_err(|e| anyhow!("{e}"))?;
            out.push((table, class));
        } else {
            bail!("line {}: unrecognized directive {:?}", lineno + 1, line);
        }
    }
    if current.is_some() {
        bail!("unterminated group (missing `end`)");
    }
    Ok(out)
}

/// Cycle notation, 1-based: `(1 2)(3 4 5)`.
fn parse_cycles(s: &str) -> Result<Vec<Vec<u16>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            bail!("expected '(' in cycle notation: {s:?}");
        }
        let close = rest.find(')').context("unbalanced cycle")?;
        let body = &rest[1..close];
        let cycle: Vec<u16> = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v: u16 = t.parse().context("bad point")?;
                if v == 0 {
                    bail!("points are 1-based");
                }
                Ok(v - 1)
            })
            .collect::<Result<_>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Extend the default catalog with groups from a file.
pub fn load_catalog(path: Option<&std::path::Path>) -> Result<QuotientCatalog> {
    let mut cat = resfin::rfgrowth::default_catalog();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading catalog {}", path.display()))?;
        for (table, class) in parse_catalog_file(&text)? {
            cat.push_table(table, class);
        }
    }
    Ok(cat)
}

/// Parse an automorphism rule file over the free generators x, y, z, w (or
/// x1..xk):
///
/// ```text
/// aut swap
/// x = y
/// y = x
/// inv
/// x = y
/// y = x
/// end
/// ```
pub fn parse_aut_file(text: &str, rank: usize) -> Result<Vec<AutRule>> {
    let names = resfin::word::free_names(rank);
    let identity: Vec<resfin::word::Word> =
        (0..rank).map(resfin::word::Word::gen).collect();
    let mut rules = Vec::new();
    let mut cur: Option<(String, Vec<resfin::word::Word>, Vec<resfin::word::Word>, bool)> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("aut") {
            if cur.is_some() {
                bail!("line {}: nested aut", lineno + 1);
            }
            let name = rest.trim().to_string();
            cur = Some((
                if name.is_empty() { format!("rule-{}", rules.len() + 1) } else { name },
                identity.clone(),
                identity.clone(),
                false,
            ));
        } else if line == "inv" {
            let c = cur.as_mut().context("inv outside aut")?;
            c.3 = true;
        } else if line == "end" {
            let (name, forward, inverse, _) = cur.take().context("end without aut")?;
            let rule = AutRule { name, forward, inverse };
            rule.validate(rank)
                .map_err(|_| anyhow!("line {}: rule does not invert", lineno + 1))?;
            rules.push(rule);
        } else if let Some((lhs, rhs)) = line.split_once('=') {
            let c = cur
                .as_mut()
                .with_context(|| format!("line {}: mapping outside aut", lineno + 1))?;
            let gen = names
                .iter()
                .position(|n| n == lhs.trim())
                .with_context(|| format!("line {}: unknown generator {:?}", lineno + 1, lhs.trim()))?;
            let img = parse_word(rhs.trim(), &names).map_err(|e| anyhow!("line {}: {e}", lineno + 1))?;
            if c.3 {
                c.2[gen] = img;
            } else {
                c.1[gen] = img;
            }
        } else {
            bail!("line {}: unrecognized directive {:?}", lineno + 1, line);
        }
    }
    if cur.is_some() {
        bail!("unterminated aut (missing `end`)");
    }
    Ok(rules)
}
