//! Arithmetic in GF(p^m): element encoding, the chosen modulus, generators
//! and checked operations on field-bound elements.

use rs_insdel::gf::Field;

fn main() {
    let f9 = Field::new(3, 2).unwrap();
    println!("{}: modulus coefficients (constant first) {:?}", f9.label(), f9.modulus());
    println!("generator {} has order {}", f9.generator(), f9.multiplicative_order(f9.generator()).unwrap());

    let x = f9.element(4).unwrap(); // 1 + 1·t
    let y = f9.element(5).unwrap(); // 2 + 1·t
    println!("{x} + {y} = {}", f9.add(x, y));
    println!("{x} · {y} = {}", f9.mul(x, y));
    println!("{x}⁻¹ = {}", f9.inv(x).unwrap());
    println!("primitive elements: {:?}", f9.primitive_elements().iter().map(|e| e.value()).collect::<Vec<_>>());

    // Field-bound elements refuse to mix fields.
    let f7 = Field::new(7, 1).unwrap();
    let a = f9.bind(x).unwrap();
    let b = f7.bind(f7.element(3).unwrap()).unwrap();
    println!("mixing fields: {:?}", a.add(&b));
}
