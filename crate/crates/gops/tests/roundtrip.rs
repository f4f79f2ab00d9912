//! Printed values parse back to themselves: a thousand random values of
//! every kind.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use group_operads::bar::BarSimplex;
use group_operads::monad::{u_embed, MonadElement, PointedAlphabet};
use group_operads::operad::{Element, Family};

#[path = "../src/expr.rs"]
#[allow(dead_code)]
mod expr;

use expr::{eval, Context, Value};

fn random_family<R: Rng>(rng: &mut R) -> Family {
    match rng.gen_range(0..6) {
        0 => Family::Trivial,
        1 => Family::Symmetric,
        2 => Family::Braid,
        3 => Family::Ribbon,
        4 => Family::AbelianPower { modulus: 2 },
        _ => Family::AbelianPower { modulus: 4 },
    }
}

fn random_value<R: Rng>(ctx: &Context, rng: &mut R) -> Value {
    match rng.gen_range(0..4) {
        0 => {
            let fam = random_family(rng);
            let elem = fam.sample(rng.gen_range(0..=4), rng.gen_range(0..=6), rng);
            Value::El { family: fam, elem }
        }
        1 => {
            // bar simplices over families whose entries print in full form
            let fam = if rng.gen_bool(0.5) { Family::Symmetric } else { Family::Braid };
            let arity = rng.gen_range(0..=3);
            let entries: Vec<Element> = (0..=rng.gen_range(0..=2))
                .map(|_| fam.sample(arity, 4, rng))
                .collect();
            Value::Bar(BarSimplex::new(fam, entries).expect("equal arities"))
        }
        2 => Value::Mel(random_mel(ctx, rng)),
        _ => {
            let mut word = u_embed(&random_mel(ctx, rng)).expect("block oracle");
            for _ in 0..rng.gen_range(0..=2) {
                let next = u_embed(&random_mel(ctx, rng)).expect("block oracle");
                word = if rng.gen_bool(0.5) {
                    word.product(&next.inverse())
                } else {
                    word.product(&next)
                };
            }
            Value::Word(word)
        }
    }
}

fn random_mel<R: Rng>(ctx: &Context, rng: &mut R) -> MonadElement {
    let fam = match rng.gen_range(0..3) {
        0 => Family::Symmetric,
        1 => Family::Braid,
        _ => Family::AbelianPower { modulus: 2 },
    };
    let arity = rng.gen_range(0..=3);
    let level = rng.gen_range(0..=2);
    let mut entries = vec![fam.identity(arity)];
    for _ in 0..level {
        entries.push(fam.sample(arity, 4, rng));
    }
    let non_base: Vec<char> = ctx.alphabet.non_base();
    let letters = (0..arity)
        .map(|_| non_base[rng.gen_range(0..non_base.len())])
        .collect();
    MonadElement::canonicalize(&fam, entries, letters, &ctx.alphabet).expect("valid data")
}

#[test]
fn print_parse_round_trip_on_random_values() {
    let ctx = Context { alphabet: PointedAlphabet::with_base("xyz").expect("letters") };
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for i in 0..1000 {
        let v = random_value(&ctx, &mut rng);
        let text = v.to_string();
        let back = eval(&ctx, &text).unwrap_or_else(|e| {
            panic!("sample {i}: failed to reparse {text:?}: {}", e.render(&text))
        });
        assert_eq!(v, back, "sample {i}: {text}");
    }
}
