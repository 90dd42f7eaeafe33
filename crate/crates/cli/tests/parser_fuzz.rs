//! Random token strings against an independent recognizer of the expression
//! grammar.

use indec_core::parse_expr;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ARITY: usize = 3;

const VOCAB: &[&str] = &[
    "add", "mul", "monus", "min", "max", "mod", "eq", "le", "lt", "ite", "x1", "x2", "x3", "x4", "x9", "x0", "x", "y",
    "len", "last", "foo", "(", ")", ",", ",", "(", ")", "0", "7", "42", "18446744073709551615", "18446744073709551616",
    " ", "  ", "-", "#", "_",
];

#[derive(Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Open,
    Close,
    Comma,
}

fn tokenize(s: &str) -> Option<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' || c == ')' || c == ',' {
            out.push(match c {
                '(' => Tok::Open,
                ')' => Tok::Close,
                _ => Tok::Comma,
            });
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..chars.len()).find(|&j| !chars[j].is_ascii_digit()).unwrap_or(chars.len());
            out.push(Tok::Num(chars[i..j].iter().collect()));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let j = (i..chars.len())
                .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                .unwrap_or(chars.len());
            out.push(Tok::Ident(chars[i..j].iter().collect()));
            i = j;
        } else {
            return None;
        }
    }
    Some(out)
}

fn arg_count(name: &str) -> Option<usize> {
    match name {
        "add" | "mul" | "monus" | "min" | "max" | "mod" | "eq" | "le" | "lt" => Some(2),
        "ite" => Some(3),
        _ => None,
    }
}

fn is_var(name: &str) -> bool {
    let b = name.as_bytes();
    b.len() == 2 && b[0] == b'x' && (b'1'..=b'0' + ARITY as u8).contains(&b[1])
}

/// Consume one expression starting at `i`; the index after it on success.
fn expr(toks: &[Tok], i: usize) -> Option<usize> {
    match toks.get(i)? {
        Tok::Num(d) => d.parse::<u64>().ok().map(|_| i + 1),
        Tok::Ident(name) if is_var(name) => Some(i + 1),
        Tok::Ident(name) => {
            let k = arg_count(name)?;
            if toks.get(i + 1)? != &Tok::Open {
                return None;
            }
            let mut j = i + 2;
            for a in 0..k {
                j = expr(toks, j)?;
                let want = if a + 1 == k { Tok::Close } else { Tok::Comma };
                if toks.get(j)? != &want {
                    return None;
                }
                j += 1;
            }
            Some(j)
        }
        _ => None,
    }
}

fn accepts(s: &str) -> bool {
    tokenize(s).is_some_and(|t| expr(&t, 0) == Some(t.len()))
}

/// A random expression that is in the grammar by construction.
fn valid(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) {
            format!("x{}", rng.gen_range(1..=ARITY))
        } else {
            rng.gen_range(0..100u64).to_string()
        };
    }
    let name = *["add", "mul", "monus", "min", "max", "mod", "eq", "le", "lt", "ite"].choose(rng).unwrap();
    let k = arg_count(name).unwrap();
    let args: Vec<String> = (0..k).map(|_| valid(rng, depth - 1)).collect();
    let sep = if rng.gen_bool(0.2) { " , " } else { "," };
    format!("{name}({})", args.join(sep))
}

fn mutate(rng: &mut ChaCha8Rng, s: &str) -> String {
    let mut chars: Vec<char> = s.chars().collect();
    if chars.is_empty() {
        return s.to_string();
    }
    let i = rng.gen_range(0..chars.len());
    match rng.gen_range(0..3) {
        0 => {
            chars.remove(i);
        }
        1 => chars.insert(i, *['(', ')', ',', '1', 'x', ' '].choose(rng).unwrap()),
        _ => {
            let j = rng.gen_range(0..chars.len());
            chars.swap(i, j);
        }
    }
    chars.into_iter().collect()
}

#[test]
fn parser_agrees_with_recognizer_on_ten_thousand_strings() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f022);
    let (mut accepted, mut rejected) = (0, 0);
    for k in 0..10_000 {
        let s = match k % 3 {
            0 => {
                let len = rng.gen_range(0..16);
                (0..len).map(|_| *VOCAB.choose(&mut rng).unwrap()).collect::<String>()
            }
            1 => valid(&mut rng, 4),
            _ => {
                let v = valid(&mut rng, 3);
                mutate(&mut rng, &v)
            }
        };
        let parsed = parse_expr(&s, ARITY);
        assert_eq!(parsed.is_ok(), accepts(&s), "{s:?}: {parsed:?}");
        match parsed {
            Ok(e) => {
                accepted += 1;
                let printed = e.to_string();
                assert_eq!(parse_expr(&printed, ARITY).unwrap(), e, "{s:?}");
            }
            Err(err) => {
                rejected += 1;
                assert!(err.pos <= s.len(), "{s:?}: {err:?}");
            }
        }
    }
    assert!(accepted > 3000 && rejected > 3000, "{accepted} accepted, {rejected} rejected");
}

#[test]
fn errors_point_at_the_problem() {
    let e = parse_expr("add(x1,,x2)", ARITY).unwrap_err();
    assert_eq!(e.pos, 7);
    let e = parse_expr("add(x1, x7)", ARITY).unwrap_err();
    assert_eq!(e.pos, 8);
    assert!(parse_expr("ite(1,2)", ARITY).is_err());
}
