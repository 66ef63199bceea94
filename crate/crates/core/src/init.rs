//! Initial orderings for local search.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::text::{Alphabet, Ordering, Text};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InitMethod {
    /// Fisher-Yates shuffle of the ASCII ordering.
    Random(u64),
    Ascii,
    FirstAppearance,
    LeastFrequent,
    MostFrequent,
    ChapinTate,
    InverseChapinTate,
    Vowels,
    /// One decimal byte value per line, highest precedence first.
    FromFile(PathBuf),
}

impl InitMethod {
    /// Name used on the command line and in result files.
    pub fn name(&self) -> &'static str {
        match self {
            InitMethod::Random(_) => "random",
            InitMethod::Ascii => "ascii",
            InitMethod::FirstAppearance => "first-appearance",
            InitMethod::LeastFrequent => "least-frequent",
            InitMethod::MostFrequent => "most-frequent",
            InitMethod::ChapinTate => "chapin-tate",
            InitMethod::InverseChapinTate => "inv-chapin-tate",
            InitMethod::Vowels => "vowels",
            InitMethod::FromFile(_) => "file",
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, InitMethod::Random(_))
    }

    /// All deterministic, non-file methods.
    pub fn deterministic() -> [InitMethod; 7] {
        [
            InitMethod::Ascii,
            InitMethod::FirstAppearance,
            InitMethod::LeastFrequent,
            InitMethod::MostFrequent,
            InitMethod::ChapinTate,
            InitMethod::InverseChapinTate,
            InitMethod::Vowels,
        ]
    }
}

impl fmt::Display for InitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitMethod::FromFile(p) => write!(f, "file:{}", p.display()),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for InitMethod {
    type Err = Error;

    /// Parses method names; `random` takes seed 0 unless written `random:<seed>`,
    /// and files are given as `file:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let m = match (head, arg) {
            ("random", None) => InitMethod::Random(0),
            ("random", Some(seed)) => InitMethod::Random(
                seed.parse()
                    .map_err(|_| Error::Parse(format!("invalid seed in `{s}`")))?,
            ),
            ("ascii", None) => InitMethod::Ascii,
            ("first-appearance", None) => InitMethod::FirstAppearance,
            ("least-frequent", None) => InitMethod::LeastFrequent,
            ("most-frequent", None) => InitMethod::MostFrequent,
            ("chapin-tate", None) => InitMethod::ChapinTate,
            ("inv-chapin-tate", None) => InitMethod::InverseChapinTate,
            ("vowels", None) => InitMethod::Vowels,
            ("file", Some(path)) if !path.is_empty() => InitMethod::FromFile(path.into()),
            _ => return Err(Error::Parse(format!("unknown init method `{s}`"))),
        };
        Ok(m)
    }
}

pub fn init_ordering(m: &InitMethod, t: &Text) -> Result<Ordering> {
    let alphabet = t.alphabet();
    match m {
        InitMethod::Random(seed) => Ok(random_ordering(&alphabet, *seed)),
        InitMethod::Ascii => Ok(Ordering::ascii(&alphabet)),
        InitMethod::FirstAppearance => {
            let mut seen = [false; 256];
            let mut perm = Vec::with_capacity(alphabet.len());
            for &b in t.bytes() {
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    perm.push(b);
                }
            }
            Ordering::new(perm)
        }
        InitMethod::LeastFrequent => {
            let counts = t.byte_counts();
            let mut perm = alphabet.symbols().to_vec();
            perm.sort_by_key(|&b| (counts[b as usize], b));
            Ordering::new(perm)
        }
        InitMethod::MostFrequent => {
            let counts = t.byte_counts();
            let mut perm = alphabet.symbols().to_vec();
            perm.sort_by_key(|&b| (std::cmp::Reverse(counts[b as usize]), b));
            Ordering::new(perm)
        }
        InitMethod::ChapinTate => chapin_tate_template().restrict_to(&alphabet),
        InitMethod::InverseChapinTate => {
            inverse_permutation(&chapin_tate_template()).restrict_to(&alphabet)
        }
        InitMethod::Vowels => vowels_template().restrict_to(&alphabet),
        InitMethod::FromFile(path) => read_ordering_file(path)?.restrict_to(&alphabet),
    }
}

pub fn random_ordering(alphabet: &Alphabet, seed: u64) -> Ordering {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_ordering_with(alphabet, &mut rng)
}

pub(crate) fn random_ordering_with<R: rand::Rng>(alphabet: &Alphabet, rng: &mut R) -> Ordering {
    let mut perm = alphabet.symbols().to_vec();
    perm.shuffle(rng);
    Ordering::new(perm).expect("shuffle preserves distinctness")
}

/// `count` random orderings; element `i` is seeded with `master_seed + i`.
pub fn fixed_random_starts(count: usize, master_seed: u64, t: &Text) -> Vec<Ordering> {
    let alphabet = t.alphabet();
    (0..count as u64)
        .map(|i| random_ordering(&alphabet, master_seed.wrapping_add(i)))
        .collect()
}

/// Group-theoretic inverse of the ordering, viewed as a permutation of the
/// ascending (ASCII) arrangement of its own symbols.
pub fn inverse_permutation(o: &Ordering) -> Ordering {
    let mut ascii = o.perm().to_vec();
    ascii.sort_unstable();
    // p[i] = ascii index of o.perm[i]; the inverse q satisfies q[p[i]] = i.
    let perm = ascii
        .iter()
        .map(|&b| ascii[o.rank_of(b).expect("symbol of its own ordering")])
        .collect::<Vec<u8>>();
    Ordering::new(perm).expect("inverse of a permutation is a permutation")
}

const CT_UPPER: &[u8; 26] = b"AEIOUBCDGFHRLSMNPQJKTWVXYZ";

/// Chapin-Tate ordering over all 256 byte values.
pub fn chapin_tate_template() -> Ordering {
    let mut perm: Vec<u8> = (0..=255u8).collect();
    perm.swap(b'!' as usize, b'@' as usize);
    perm[b'+' as usize..=b'.' as usize].copy_from_slice(b"+-,.");
    perm[b'A' as usize..=b'Z' as usize].copy_from_slice(CT_UPPER);
    let lower: Vec<u8> = CT_UPPER.iter().map(|c| c.to_ascii_lowercase()).collect();
    perm[b'a' as usize..=b'z' as usize].copy_from_slice(&lower);
    Ordering::new(perm).expect("template is a permutation")
}

/// `aeiouAEIOU` first, then every other byte in ascending order.
pub fn vowels_template() -> Ordering {
    const VOWELS: &[u8] = b"aeiouAEIOU";
    let perm: Vec<u8> = VOWELS
        .iter()
        .copied()
        .chain((0..=255u8).filter(|b| !VOWELS.contains(b)))
        .collect();
    Ordering::new(perm).expect("template is a permutation")
}

pub fn parse_ordering(src: &str) -> Result<Ordering> {
    let mut perm = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: u8 = line.parse().map_err(|_| {
            Error::Parse(format!("line {}: `{line}` is not a byte value", lineno + 1))
        })?;
        perm.push(v);
    }
    Ordering::new(perm).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_ordering_file(path: &Path) -> Result<Ordering> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_ordering(&src)
}

/// Inverse of [`parse_ordering`].
pub fn format_ordering(o: &Ordering) -> String {
    o.perm().iter().map(|b| format!("{b}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> Text {
        Text::new(s.as_bytes().to_vec(), b'$').unwrap()
    }

    fn perm_str(o: &Ordering) -> String {
        String::from_utf8(o.perm().to_vec()).unwrap()
    }

    #[test]
    fn simple_methods_on_example() {
        let t = text("cacatcg");
        assert_eq!(
            perm_str(&init_ordering(&InitMethod::Ascii, &t).unwrap()),
            "acgt"
        );
        assert_eq!(
            perm_str(&init_ordering(&InitMethod::FirstAppearance, &t).unwrap()),
            "catg"
        );
        // counts c:3 a:2 g:1 t:1, ties ascending by byte
        assert_eq!(
            perm_str(&init_ordering(&InitMethod::LeastFrequent, &t).unwrap()),
            "gtac"
        );
        assert_eq!(
            perm_str(&init_ordering(&InitMethod::MostFrequent, &t).unwrap()),
            "cagt"
        );
    }

    #[test]
    fn chapin_tate_letters() {
        let upper: String = ('A'..='Z').collect();
        let t = text(&upper);
        assert_eq!(
            perm_str(&init_ordering(&InitMethod::ChapinTate, &t).unwrap()),
            "AEIOUBCDGFHRLSMNPQJKTWVXYZ"
        );
        assert_eq!(
            perm_str(&init_ordering(&InitMethod::InverseChapinTate, &t).unwrap()),
            "AFGHBJIKCSTMOPDQRLNUEWVXYZ"
        );
        let lower: String = ('a'..='z').collect();
        assert_eq!(
            perm_str(&init_ordering(&InitMethod::ChapinTate, &text(&lower)).unwrap()),
            "aeioubcdgfhrlsmnpqjktwvxyz"
        );
    }

    #[test]
    fn chapin_tate_punctuation() {
        let t = text("!@+,-.");
        let ct = init_ordering(&InitMethod::ChapinTate, &t).unwrap();
        assert_eq!(perm_str(&ct), "@+-,.!");
        let ict = init_ordering(&InitMethod::InverseChapinTate, &t).unwrap();
        assert_eq!(perm_str(&ict), "@+-,.!");
    }

    #[test]
    fn vowels_first() {
        let t = text("xbaEzO!");
        let o = init_ordering(&InitMethod::Vowels, &t).unwrap();
        assert_eq!(perm_str(&o), "aEO!bxz");
    }

    #[test]
    fn inverse_of_identity_and_involution() {
        let id = Ordering::new(b"abcdef".to_vec()).unwrap();
        assert_eq!(inverse_permutation(&id), id);
        let o = random_ordering(&Alphabet::from_bytes(b"abcdefghij"), 7);
        assert_eq!(inverse_permutation(&inverse_permutation(&o)), o);
        let ct = chapin_tate_template();
        assert_eq!(inverse_permutation(&inverse_permutation(&ct)), ct);
    }

    #[test]
    fn random_is_seeded() {
        let t = text("the quick brown fox");
        let a = init_ordering(&InitMethod::Random(3), &t).unwrap();
        let b = init_ordering(&InitMethod::Random(3), &t).unwrap();
        assert_eq!(a, b);
        a.check_covers(&t.alphabet()).unwrap();
    }

    #[test]
    fn fixed_starts_are_reproducible() {
        let t = text("abracadabra arbadacarba");
        let a = fixed_random_starts(20, 99, &t);
        let b = fixed_random_starts(20, 99, &t);
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        for o in &a {
            o.check_covers(&t.alphabet()).unwrap();
        }
        assert_eq!(a[3], random_ordering(&t.alphabet(), 102));
    }

    #[test]
    fn fixed_start_two_symbols() {
        // Seed 0 and seed 1 were enumerated once; each picks one of {ab, ba}.
        let t = text("ab");
        let picks: Vec<String> = (0..2)
            .map(|s| perm_str(&fixed_random_starts(1, s, &t)[0]))
            .collect();
        for p in &picks {
            assert!(p == "ab" || p == "ba");
        }
        assert_eq!(picks, FIXED_START_AB_PICKS);
    }

    const FIXED_START_AB_PICKS: [&str; 2] = ["ab", "ab"];

    #[test]
    fn ordering_file_round_trip_and_errors() {
        let o = Ordering::new(b"zyx".to_vec()).unwrap();
        assert_eq!(parse_ordering(&format_ordering(&o)).unwrap(), o);
        let src = "# fda style\n122 # z\n\n121\n120\n";
        assert_eq!(parse_ordering(src).unwrap(), o);
        assert!(matches!(parse_ordering("300\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_ordering("1\n1\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn file_ordering_must_cover_alphabet() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("o.txt");
        std::fs::write(&path, "116\n103\n99\n97\n").unwrap();
        let t = text("cacatcg");
        let o = init_ordering(&InitMethod::FromFile(path.clone()), &t).unwrap();
        assert_eq!(perm_str(&o), "tgca");
        std::fs::write(&path, "116\n103\n").unwrap();
        assert!(matches!(
            init_ordering(&InitMethod::FromFile(path), &t),
            Err(Error::OrderingMismatch(_))
        ));
        assert!(matches!(
            init_ordering(&InitMethod::FromFile(dir.path().join("missing")), &t),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn method_names_parse() {
        for name in [
            "random",
            "ascii",
            "first-appearance",
            "least-frequent",
            "most-frequent",
            "chapin-tate",
            "inv-chapin-tate",
            "vowels",
        ] {
            assert_eq!(name.parse::<InitMethod>().unwrap().name(), name);
        }
        assert_eq!(
            "file:fda.txt".parse::<InitMethod>().unwrap(),
            InitMethod::FromFile("fda.txt".into())
        );
        assert_eq!(
            "random:9".parse::<InitMethod>().unwrap(),
            InitMethod::Random(9)
        );
        assert!("file".parse::<InitMethod>().is_err());
        assert!("bogus".parse::<InitMethod>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn every_method_yields_a_permutation(bytes in proptest::collection::vec(1u8..=255, 1..300), seed in any::<u64>()) {
                let t = Text::new(bytes, 0).unwrap();
                let methods = InitMethod::deterministic().into_iter().chain([InitMethod::Random(seed)]);
                for m in methods {
                    let o = init_ordering(&m, &t).unwrap();
                    prop_assert!(o.check_covers(&t.alphabet()).is_ok());
                }
            }

            #[test]
            fn frequency_tie_groups_agree(bytes in proptest::collection::vec(b'a'..b'h', 1..200)) {
                let t = Text::new(bytes, b'$').unwrap();
                let counts = t.byte_counts();
                let least = init_ordering(&InitMethod::LeastFrequent, &t).unwrap();
                let most = init_ordering(&InitMethod::MostFrequent, &t).unwrap();
                let groups = |o: &Ordering| {
                    let mut g: Vec<(u64, Vec<u8>)> = Vec::new();
                    for &b in o.perm() {
                        let c = counts[b as usize];
                        match g.last_mut() {
                            Some((gc, v)) if *gc == c => v.push(b),
                            _ => g.push((c, vec![b])),
                        }
                    }
                    g
                };
                let mut lg = groups(&least);
                let mg = groups(&most);
                lg.reverse();
                prop_assert_eq!(lg, mg);
            }

            #[test]
            fn vowels_precede_others(bytes in proptest::collection::vec(any::<u8>().prop_filter("no marker", |b| *b != 0), 1..200)) {
                let t = Text::new(bytes, 0).unwrap();
                let o = init_ordering(&InitMethod::Vowels, &t).unwrap();
                let is_vowel = |b: u8| b"aeiouAEIOU".contains(&b);
                let first_other = o.perm().iter().position(|&b| !is_vowel(b)).unwrap_or(o.len());
                prop_assert!(o.perm()[first_other..].iter().all(|&b| !is_vowel(b)));
            }
        }
    }
}
