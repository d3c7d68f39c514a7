//! Small standard groups used by tests, examples and the CLI.

use crate::group::{direct_product, FiniteGroup};
use crate::perm::{group_from_permutations, DEFAULT_ORDER_CAP};

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table = (0..n * n).map(|x| ((x / n + x % n) % n) as u32).collect();
    FiniteGroup::from_trusted(n, table).with_label(format!("Z{n}"))
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push((1..n).chain([0]).collect());
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
    }
    group_from_permutations(n.max(1), &gens, DEFAULT_ORDER_CAP)
        .expect("symmetric group within cap")
        .with_label(format!("S{n}"))
}

pub fn alternating4() -> FiniteGroup {
    group_from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], DEFAULT_ORDER_CAP)
        .unwrap()
        .with_label("A4")
}

/// Dihedral group of order `2m`, acting on the vertices of an `m`-gon.
pub fn dihedral(m: usize) -> FiniteGroup {
    assert!(m >= 3);
    let rot: Vec<usize> = (0..m).map(|x| (x + 1) % m).collect();
    let refl: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
    group_from_permutations(m, &[rot, refl], DEFAULT_ORDER_CAP)
        .unwrap()
        .with_label(format!("D{}", 2 * m))
}

/// Quaternion group; index `4s + u` is `(-1)^s · u` with `u ∈ {1, i, j, k}`.
pub fn quaternion() -> FiniteGroup {
    // unit products: (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (s, u) = UNIT[a % 4][b % 4];
            let sign = (a / 4 + b / 4 + s) % 2;
            table.push((sign * 4 + u) as u32);
        }
    }
    FiniteGroup::from_flat(8, table).unwrap().with_label("Q8")
}

pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let label = format!(
        "{}x{}",
        a.label().unwrap_or("?"),
        b.label().unwrap_or("?")
    );
    direct_product(a, b).with_label(label)
}

pub fn klein() -> FiniteGroup {
    product(&cyclic(2), &cyclic(2))
}

/// One representative of every isomorphism class of groups of order ≤ `n`
/// (supported up to 8).
pub fn groups_up_to_order(n: usize) -> Vec<FiniteGroup> {
    assert!(n <= 8, "catalog only covers orders up to 8");
    let mut out = Vec::new();
    for k in 1..=n {
        match k {
            4 => {
                out.push(cyclic(4));
                out.push(klein());
            }
            6 => {
                out.push(cyclic(6));
                out.push(symmetric(3));
            }
            8 => {
                out.push(cyclic(8));
                out.push(product(&cyclic(4), &cyclic(2)));
                out.push(product(&klein(), &cyclic(2)));
                out.push(dihedral(4));
                out.push(quaternion());
            }
            _ => out.push(cyclic(k)),
        }
    }
    out
}

/// Looks up a catalog group by label (`Z5`, `S3`, `D8`, `Q8`, `A4`, `Z2xZ2`, ...).
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once('x') {
        return Some(product(&by_name(a)?, &by_name(b)?));
    }
    let num = |s: &str| s.parse::<usize>().ok();
    match name {
        "Q8" => Some(quaternion()),
        "A4" => Some(alternating4()),
        "V4" => Some(klein()),
        _ => {
            let (head, tail) = name.split_at(1);
            let k = num(tail)?;
            match head {
                "Z" | "C" if k >= 1 => Some(cyclic(k)),
                "S" if (1..=7).contains(&k) => Some(symmetric(k)),
                "D" if k >= 6 && k % 2 == 0 => Some(dihedral(k / 2)),
                _ => None,
            }
        }
    }
}
