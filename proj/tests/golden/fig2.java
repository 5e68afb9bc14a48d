class ClassA {
  int x;
}
class ClassB {
  int y;
  ClassB(int v) {
    y = v;
  }
}
class Main {
  public static void main(String[] args) {
    ClassA a = new ClassA();
    ClassB b = new ClassB(1);
  }
}
