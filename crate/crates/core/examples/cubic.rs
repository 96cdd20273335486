//! The twisted cubic: the irreducible gl2 action and its stabilizer in sp4.
use contact_engel::cubicalg;

fn main() {
    let r = cubicalg::verify(7, 20);
    println!("{r:#?}");
    println!("symplectic form: {:?}", cubicalg::legendrian_symplectic());
}
