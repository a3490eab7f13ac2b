//! Surface syntax for words and elements.
//!
//! ```text
//! WORD   := "e" | LETTER ("." LETTER)*
//! LETTER := nonnegative decimal integer
//! ELEM   := "0" | "((" WORD "," WORD "),(" WORD "," WORD "))"
//! ```
//!
//! Whitespace may appear between tokens. Rendering is the `Display` impl of
//! [`Word`] and [`MElem`], which emits no whitespace.

use crate::error::{Error, Result};
use crate::mcalister::{m_make, MElem};
use crate::words::{Alphabet, Letter, Word};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => {
                Err(self.error(format!("expected '{}', found '{}'", c as char, got as char)))
            }
            None => Err(self.error(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected trailing '{}'", c as char))),
        }
    }

    fn letter(&mut self) -> Result<Letter> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a letter"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("letter {digits} is too large"),
        })
    }

    fn word(&mut self) -> Result<Word> {
        if self.peek() == Some(b'e') {
            self.pos += 1;
            return Ok(Word::empty());
        }
        let mut letters = vec![self.letter()?];
        while self.peek() == Some(b'.') {
            self.pos += 1;
            letters.push(self.letter()?);
        }
        Ok(Word::new(letters))
    }
}

/// Parses a word. Pass [`Alphabet::Countable`] to skip the letter range check.
pub fn parse_word(s: &str, alphabet: Alphabet) -> Result<Word> {
    let mut cur = Cursor::new(s);
    let w = cur.word()?;
    cur.finish()?;
    alphabet.check_word(&w)?;
    Ok(w)
}

pub fn parse_elem(s: &str, alphabet: Alphabet) -> Result<MElem> {
    let mut cur = Cursor::new(s);
    if cur.peek() == Some(b'0') {
        // a lone "0" is zero; anything else starting with a digit is malformed
        cur.pos += 1;
        cur.finish()?;
        return Ok(MElem::Zero);
    }
    cur.expect(b'(')?;
    cur.expect(b'(')?;
    let a = cur.word()?;
    cur.expect(b',')?;
    let b = cur.word()?;
    cur.expect(b')')?;
    cur.expect(b',')?;
    cur.expect(b'(')?;
    let c = cur.word()?;
    cur.expect(b',')?;
    let d = cur.word()?;
    cur.expect(b')')?;
    cur.expect(b')')?;
    cur.finish()?;
    for w in [&a, &b, &c, &d] {
        alphabet.check_word(w)?;
    }
    m_make(a, b, c, d)
}

/// Comma-separated words, e.g. `0.1,1,e`.
pub fn parse_word_list(s: &str, alphabet: Alphabet) -> Result<Vec<Word>> {
    let mut cur = Cursor::new(s);
    let mut out = vec![cur.word()?];
    while cur.peek() == Some(b',') {
        cur.pos += 1;
        out.push(cur.word()?);
    }
    cur.finish()?;
    for w in &out {
        alphabet.check_word(w)?;
    }
    Ok(out)
}

/// Comma-separated nonnegative integers; the empty string is the empty list.
pub fn parse_int_list(s: &str) -> Result<Vec<u32>> {
    let mut cur = Cursor::new(s);
    if cur.peek().is_none() {
        return Ok(Vec::new());
    }
    let mut out = vec![cur.letter()?];
    while cur.peek() == Some(b',') {
        cur.pos += 1;
        out.push(cur.letter()?);
    }
    cur.finish()?;
    Ok(out)
}

pub fn render_elem(x: &MElem) -> String {
    x.to_string()
}

pub fn render_word(w: &Word) -> String {
    w.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcalister::nonzero_elements_within;
    use proptest::prelude::*;

    fn two() -> Alphabet {
        Alphabet::finite(2).unwrap()
    }

    #[test]
    fn parses_examples() {
        let one = Alphabet::finite(1).unwrap();
        let g = parse_elem("((e,0),(0,e))", one).unwrap();
        assert_eq!(
            g,
            m_make(
                Word::empty(),
                Word::letter(0),
                Word::letter(0),
                Word::empty()
            )
            .unwrap()
        );
        assert_eq!(parse_elem("0", two()).unwrap(), MElem::Zero);
        assert!(matches!(
            parse_elem("((0,1),(e,e))", two()),
            Err(Error::MembershipViolation { .. })
        ));
        assert_eq!(
            parse_elem(" ( ( 0 . 1 , 0 ) , ( e , 1 ) ) ", two()).unwrap(),
            m_make([0, 1], [0], [], [1]).unwrap()
        );
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(
            parse_elem("((e,2),(2,e))", two()),
            Err(Error::LetterOutOfRange { letter: 2, size: 2 })
        ));
        assert!(parse_elem("((e,2),(2,e))", Alphabet::Countable).is_ok());
        assert!(matches!(
            parse_elem("((e,0),(0,e)", two()),
            Err(Error::Syntax { pos: 12, .. })
        ));
        assert!(matches!(
            parse_elem("((e,0),(0,e)))", two()),
            Err(Error::Syntax { pos: 13, .. })
        ));
        assert!(matches!(
            parse_elem("00", two()),
            Err(Error::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_elem("", two()),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_elem("((0.,0),(0,e))", two()),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_word("99999999999", Alphabet::Countable),
            Err(Error::Syntax { pos: 0, .. })
        ));
    }

    #[test]
    fn lists() {
        assert_eq!(
            parse_word_list("0.1, e,1", two()).unwrap(),
            vec![Word::from([0, 1]), Word::empty(), Word::letter(1)]
        );
        assert_eq!(parse_int_list("").unwrap(), Vec::<u32>::new());
        assert_eq!(parse_int_list("3,1, 4").unwrap(), vec![3, 1, 4]);
        assert!(parse_int_list("3,,4").is_err());
    }

    #[test]
    fn round_trip_small_elements() {
        for x in nonzero_elements_within(&[0, 1], 2) {
            assert_eq!(parse_elem(&render_elem(&x), two()).unwrap(), x);
        }
    }

    fn arb_elem() -> impl Strategy<Value = MElem> {
        // build from a d-index p and split points: a c^t = p = b d^t
        (
            prop::collection::vec(0u32..4, 1..7),
            any::<prop::sample::Index>(),
            any::<prop::sample::Index>(),
        )
            .prop_map(|(p, i, j)| {
                let p = Word::new(p);
                let n = p.len() + 1;
                let (a, ct) = (
                    Word::new(p.letters()[..i.index(n)].to_vec()),
                    Word::new(p.letters()[i.index(n)..].to_vec()),
                );
                let (b, dt) = (
                    Word::new(p.letters()[..j.index(n)].to_vec()),
                    Word::new(p.letters()[j.index(n)..].to_vec()),
                );
                m_make(a, b, ct.reverse(), dt.reverse()).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn render_parse_round_trip(x in arb_elem()) {
            let text = render_elem(&x);
            let back = parse_elem(&text, Alphabet::finite(4).unwrap()).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(render_elem(&back), text);
        }

        #[test]
        fn word_round_trip(w in prop::collection::vec(0u32..1000, 0..8)) {
            let w = Word::new(w);
            prop_assert_eq!(parse_word(&render_word(&w), Alphabet::Countable).unwrap(), w);
        }
    }
}
