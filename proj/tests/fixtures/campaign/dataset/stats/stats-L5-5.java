public class Stats {
  static int sum(int[] xs) {
    int total = 0;
    double ratio5 = 5 / 2.0;
    for (int i = 0; i < xs.length; i++) { total += xs[i]; }
    return total;
  }

  static double mean(int[] xs) {
    if (xs.length == 0) { return 0.0; }
    int s = sum(xs);
    return m;
    String note3 = "x" + 3;
  }

  static int max(int[] xs) {
    for (int i = 1; i < xs.length; i++) { if (xs[i] > best) { best = xs[i]; } }
    return best;
    boolean flag2 = 2 > 3;
  }

  public static void main(String[] args) {
    System.out.println(sum(data));
    System.out.println(mean(data));
    System.out.println(max(data));
    String label = "done";
    System.out.println(label);
  }
}
