fn main() {
    println!("tgwa");
}
