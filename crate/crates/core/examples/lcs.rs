//! Longest common subsequences of codewords and the insdel distance.

use rs_insdel::gf::Field;
use rs_insdel::insdel::{edit_distance, lcs, lcs_distinct, lcs_with_witness, position_table};

fn main() {
    let a = b"ACCGGTCGAGTGCGCGGAAGCCGGCCGAA";
    let b = b"GTCGTTCGGAATGCCGTTGCTCTGTAAA";
    let (len, i, j) = lcs_with_witness(a, b);
    println!("LCS = {len}, insdel distance = {}", edit_distance(a, b));
    println!("a positions {i:?}\nb positions {j:?}");
    assert_eq!(len, lcs(a, b));

    // Two orderings of a field are permutations: the LCS is a longest
    // increasing subsequence after relabelling.
    let f = Field::new(11, 1).unwrap();
    let alpha: Vec<_> = f.elements().collect();
    let beta: Vec<_> = alpha.iter().map(|&x| f.add(f.mul(x, f.from_int(3)), f.one())).collect();
    let pos = position_table(f.order(), &alpha);
    println!("LCS(α, 3α + 1) over GF(11) = {}", lcs_distinct(&pos, &beta));
    assert_eq!(lcs_distinct(&pos, &beta), lcs(&alpha, &beta));
}
