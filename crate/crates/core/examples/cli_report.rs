//! Drives the command-line front end in-process and prints a JSON report.
fn main() {
    let (code, out) = contact_engel::cli::run(["contact-engel", "classify", "--t", "x4^2", "--format", "json"]);
    print!("{out}");
    println!("exit code {code}");
}
