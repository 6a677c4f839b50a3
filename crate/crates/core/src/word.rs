//! Words over signed generator indices, free reduction, and the shortlex
//! candidate enumeration used by conjugator searches.

use std::fmt;

/// One letter: a generator index with a sign (`inverse = true` means the
/// formal inverse of that generator).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(index: usize) -> Self {
        Letter { index, inverse: false }
    }

    pub fn inv_gen(index: usize) -> Self {
        Letter { index, inverse: true }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.inverse != other.inverse
    }
}

/// A word over signed generator indices. Length is the letter count.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(index: usize) -> Self {
        Word(vec![Letter::gen(index)])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `[a, b] = a^-1 b^-1 a b` (the commutator convention used throughout).
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// `k b k^-1`.
    pub fn conjugate(b: &Word, k: &Word) -> Word {
        k.concat(b).concat(&k.inverse())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Freely reduced form (cancel adjacent x x^-1 pairs).
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if stack.last().map(|&t| t.cancels(l)).unwrap_or(false) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    pub fn is_trivial_free(&self) -> bool {
        self.free_reduce().is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Index-based rendering; named rendering goes through a name table.
        write!(f, "{}", display_word(self, &|i| format!("g{i}")))
    }
}

/// Render a word with the given generator-name function, compressing runs of
/// one letter into `name^k` / `name^-k`.
pub fn display_word(w: &Word, name: &dyn Fn(usize) -> String) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < w.0.len() {
        let l = w.0[i];
        let mut run = 1usize;
        while i + run < w.0.len() && w.0[i + run] == l {
            run += 1;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&name(l.index));
        let e = run as i64 * if l.inverse { -1 } else { 1 };
        if e != 1 {
            out.push_str(&format!("^{e}"));
        }
        i += run;
    }
    out
}

/// Parse a word expression over the given generator names. Grammar:
/// `word := term+`, `term := atom ('^' int)?`,
/// `atom := name | '[' word ',' word ']' | '(' word ')'`.
/// Terms may be separated by whitespace; `^-1` marks inverses and `^k`
/// powers (k may be negative).
pub fn parse_word(input: &str, names: &[String]) -> Result<Word, String> {
    let toks = lex_word(input, names)?;
    let mut p = WParser { toks, pos: 0 };
    let w = p.word()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at token {}", p.pos));
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq)]
enum WTok {
    Name(usize),
    Int(i64),
    Caret,
    LBracket,
    RBracket,
    Comma,
    LParen,
    RParen,
}

fn lex_word(input: &str, names: &[String]) -> Result<Vec<WTok>, String> {
    let mut toks = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '^' => {
                toks.push(WTok::Caret);
                i += 1;
            }
            '[' => {
                toks.push(WTok::LBracket);
                i += 1;
            }
            ']' => {
                toks.push(WTok::RBracket);
                i += 1;
            }
            ',' => {
                toks.push(WTok::Comma);
                i += 1;
            }
            '(' => {
                toks.push(WTok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(WTok::RParen);
                i += 1;
            }
            '-' | '0'..='9' => {
                let start = i;
                if c == '-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: i64 = input[start..i]
                    .parse()
                    .map_err(|_| format!("bad integer at byte {start}"))?;
                toks.push(WTok::Int(v));
            }
            _ if c.is_ascii_alphanumeric() || c == '_' => {
                // Longest-match against the name table.
                let rest = &input[i..];
                let mut best: Option<(usize, usize)> = None;
                for (idx, n) in names.iter().enumerate() {
                    if rest.starts_with(n.as_str())
                        && best.map(|(_, l)| n.len() > l).unwrap_or(true)
                    {
                        best = Some((idx, n.len()));
                    }
                }
                match best {
                    Some((idx, l)) => {
                        toks.push(WTok::Name(idx));
                        i += l;
                    }
                    None => return Err(format!("unknown generator name at byte {i}")),
                }
            }
            _ => return Err(format!("unexpected character {c:?} at byte {i}")),
        }
    }
    Ok(toks)
}

struct WParser {
    toks: Vec<WTok>,
    pos: usize,
}

impl WParser {
    fn peek(&self) -> Option<&WTok> {
        self.toks.get(self.pos)
    }

    fn word(&mut self) -> Result<Word, String> {
        let mut out = Word::empty();
        let mut any = false;
        while matches!(
            self.peek(),
            Some(WTok::Name(_)) | Some(WTok::LBracket) | Some(WTok::LParen)
        ) {
            out = out.concat(&self.term()?);
            any = true;
        }
        if !any {
            return Err("expected a word".to_string());
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Word, String> {
        let atom = self.atom()?;
        if matches!(self.peek(), Some(WTok::Caret)) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(WTok::Int(e)) => {
                    self.pos += 1;
                    Ok(atom.pow(e))
                }
                _ => Err("expected integer exponent after '^'".to_string()),
            }
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word, String> {
        match self.peek().cloned() {
            Some(WTok::Name(i)) => {
                self.pos += 1;
                Ok(Word::gen(i))
            }
            Some(WTok::LBracket) => {
                self.pos += 1;
                let a = self.word()?;
                if !matches!(self.peek(), Some(WTok::Comma)) {
                    return Err("expected ',' in commutator".to_string());
                }
                self.pos += 1;
                let b = self.word()?;
                if !matches!(self.peek(), Some(WTok::RBracket)) {
                    return Err("expected ']'".to_string());
                }
                self.pos += 1;
                Ok(Word::commutator(&a, &b))
            }
            Some(WTok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                if !matches!(self.peek(), Some(WTok::RParen)) {
                    return Err("expected ')'".to_string());
                }
                self.pos += 1;
                Ok(w)
            }
            _ => Err("expected generator, '[', or '('".to_string()),
        }
    }
}

/// Default generator names for a free group of rank k: x, y, z, w for small
/// ranks, x1..xk beyond that.
pub fn free_names(rank: usize) -> Vec<String> {
    if rank <= 4 {
        ["x", "y", "z", "w"][..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

/// Shortlex enumeration of candidate words over `rank` generators and their
/// inverses: by length, then lexicographically with alphabet order
/// g0, g0^-1, g1, g1^-1, ...
pub fn shortlex_words(rank: usize, max_len: usize) -> impl Iterator<Item = Word> {
    let alphabet: Vec<Letter> = (0..rank)
        .flat_map(|i| [Letter::gen(i), Letter::inv_gen(i)])
        .collect();
    (0..=max_len).flat_map(move |len| ShortlexLevel::new(alphabet.clone(), len))
}

struct ShortlexLevel {
    alphabet: Vec<Letter>,
    len: usize,
    counter: Vec<usize>,
    done: bool,
}

impl ShortlexLevel {
    fn new(alphabet: Vec<Letter>, len: usize) -> Self {
        ShortlexLevel { alphabet, len, counter: vec![0; len], done: false }
    }
}

impl Iterator for ShortlexLevel {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let w = Word(self.counter.iter().map(|&i| self.alphabet[i]).collect());
        // increment counter in base |alphabet|, most significant digit first
        let base = self.alphabet.len();
        let mut i = self.len;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counter[i] += 1;
            if self.counter[i] < base {
                break;
            }
            self.counter[i] = 0;
        }
        if self.len == 0 {
            self.done = true;
        }
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let x = Word::gen(0);
        let w = x.concat(&x.inverse());
        assert!(w.is_trivial_free());
        let c = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(c.free_reduce().len(), 4);
        let cc = Word::commutator(&Word::gen(0), &Word::gen(0));
        assert!(cc.is_trivial_free());
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let names = free_names(2);
        for src in ["x y", "[x,y]", "x^-1 y^2", "[x,[y,x]]", "(x y)^2", "x^3"] {
            let w = parse_word(src, &names).unwrap();
            let shown = display_word(&w, &|i| names[i].clone());
            let back = parse_word(&shown, &names).unwrap();
            assert_eq!(w, back, "{src} -> {shown}");
        }
    }

    #[test]
    fn commutator_expansion() {
        let names = free_names(2);
        let w = parse_word("[x,y]", &names).unwrap();
        let manual = parse_word("x^-1 y^-1 x y", &names).unwrap();
        assert_eq!(w, manual);
    }

    #[test]
    fn shortlex_order_matches_search_contract() {
        let words: Vec<String> = shortlex_words(2, 1)
            .map(|w| display_word(&w, &|i| free_names(2)[i].clone()))
            .collect();
        assert_eq!(words, vec!["1", "x", "x^-1", "y", "y^-1"]);
        // length-2 block begins with x x
        let l2: Vec<Word> = shortlex_words(2, 2).filter(|w| w.len() == 2).collect();
        assert_eq!(l2.len(), 16);
        assert_eq!(l2[0], Word(vec![Letter::gen(0), Letter::gen(0)]));
    }
}
