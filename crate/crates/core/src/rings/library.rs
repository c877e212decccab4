use super::{Ring, TableRing};
use crate::error::{Error, Result};

/// Builds a table ring from an element list and closures on elements.
fn from_ops<T: PartialEq + Clone>(
    name: &str,
    elems: Vec<T>,
    label: impl Fn(&T) -> String,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    zero: T,
    one: T,
) -> Ring {
    let idx = |x: &T| elems.iter().position(|e| e == x).expect("closed operation");
    let table = TableRing {
        elements: elems.iter().map(&label).collect(),
        add: elems.iter().map(|a| elems.iter().map(|b| idx(&add(a, b))).collect()).collect(),
        mul: elems.iter().map(|a| elems.iter().map(|b| idx(&mul(a, b))).collect()).collect(),
        zero: idx(&zero),
        one: idx(&one),
    };
    Ring::table(name, table).expect("library ring satisfies the axioms")
}

fn bits(k: usize) -> Vec<Vec<u8>> {
    (0..1usize << k)
        .map(|m| (0..k).map(|i| ((m >> (k - 1 - i)) & 1) as u8).collect())
        .collect()
}

fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

/// Upper triangular 2x2 matrices over F_2, stored as `[a, b, c]` for `[[a, b], [0, c]]`.
fn ut2_f2() -> Ring {
    from_ops(
        "ut2_f2",
        bits(3),
        |e| format!("[[{},{}],[0,{}]]", e[0], e[1], e[2]),
        |a, b| xor(a, b),
        |a, b| vec![a[0] & b[0], (a[0] & b[1]) ^ (a[1] & b[2]), a[2] & b[2]],
        vec![0, 0, 0],
        vec![1, 0, 1],
    )
}

/// F_2[x]/(x^2), elements `a + b x`.
fn f2_dual() -> Ring {
    from_ops(
        "f2[x]/(x^2)",
        bits(2),
        |e| format!("{}+{}x", e[0], e[1]),
        |a, b| xor(a, b),
        |a, b| vec![a[0] & b[0], (a[0] & b[1]) ^ (a[1] & b[0])],
        vec![0, 0],
        vec![1, 0],
    )
}

/// F_2[x,y]/(x,y)^2, elements `a + b x + c y`; local, not self-injective.
fn f2_xy() -> Ring {
    from_ops(
        "f2[x,y]/(x,y)^2",
        bits(3),
        |e| format!("{}+{}x+{}y", e[0], e[1], e[2]),
        |a, b| xor(a, b),
        |a, b| {
            vec![
                a[0] & b[0],
                (a[0] & b[1]) ^ (a[1] & b[0]),
                (a[0] & b[2]) ^ (a[2] & b[0]),
            ]
        },
        vec![0, 0, 0],
        vec![1, 0, 0],
    )
}

/// The field with four elements, `a + b t` with `t^2 = t + 1`.
fn f4() -> Ring {
    from_ops(
        "f4",
        bits(2),
        |e| format!("{}+{}t", e[0], e[1]),
        |a, b| xor(a, b),
        |a, b| {
            let t2 = a[1] & b[1];
            vec![(a[0] & b[0]) ^ t2, (a[0] & b[1]) ^ (a[1] & b[0]) ^ t2]
        },
        vec![0, 0],
        vec![1, 0],
    )
}

/// F_2 x F_2 with componentwise operations.
fn f2xf2() -> Ring {
    from_ops(
        "f2xf2",
        bits(2),
        |e| format!("({},{})", e[0], e[1]),
        |a, b| xor(a, b),
        |a, b| vec![a[0] & b[0], a[1] & b[1]],
        vec![0, 0],
        vec![1, 1],
    )
}

/// Names accepted by [`named`].
pub const NAMES: &[&str] = &["ut2_f2", "f2[x]/(x^2)", "f2[x,y]/(x,y)^2", "f4", "f2xf2", "z4_table"];

/// A library ring by name; `zmod<n>` also resolves to `Z/n`.
pub fn named(name: &str) -> Result<Ring> {
    if let Some(n) = name.strip_prefix("zmod") {
        let n: u64 = n
            .parse()
            .map_err(|_| Error::Input(format!("unknown ring `{name}`")))?;
        return Ring::zmod(n);
    }
    Ok(match name {
        "ut2_f2" => ut2_f2(),
        "f2[x]/(x^2)" => f2_dual(),
        "f2[x,y]/(x,y)^2" => f2_xy(),
        "f4" => f4(),
        "f2xf2" => f2xf2(),
        "z4_table" => Ring::table("z4_table", Ring::zmod(4)?.to_table())?,
        _ => return Err(Error::Input(format!("unknown ring `{name}`"))),
    })
}

/// Every library table ring, in a fixed order.
pub fn library() -> Vec<Ring> {
    NAMES.iter().map(|n| named(n).unwrap()).collect()
}
