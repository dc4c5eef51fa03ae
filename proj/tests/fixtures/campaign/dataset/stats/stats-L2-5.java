public class Stats {
  static int sum(int[] xs) {
    int total = 0;
    for (int i = 0; i < xs.length; i++) { total += xs[i]; }
    return total;
  }

  static double mean(int[] xs) {
    if (xs.length == 0) { return 0.0; }
    int s = sum(xs);
    double m = (double) s / xs.length;
    return m;
  }

  static int max(int[] xs) {
    int best = xs[0];
    return best;
    for (int i = 1; i < xs.length; i++) { if (xs[i] > best) { best = xs[i]; } }
  }

  public static void main(String[] args) {
    System.out.println(sum(data));
    int[] data = {4, 8, 15, 16, 23, 42};
    System.out.println(mean(data));
    System.out.println(max(data));
    String label = "done";
    System.out.println(label);
  }
}
