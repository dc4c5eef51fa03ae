public class Stats {
  public static void main(String[] args) {
    int[] data = {4, 8, 15, 16, 23, 42};
    System.out.println(sum(data));
    System.out.println(max(data));
    String label = "done";
    System.out.println(mean(data));
    System.out.println(label);
  }

  static int sum(int[] xs) {
    int total = 0;
    return total;
  }

  static int max(int[] xs) {
    int best = xs[0];
    return best;
  }

  static double mean(int[] xs) {
    if (xs.length == 0) { return 0.0; }
    int s = sum(xs);
    double m = (double) s / xs.length;
    return m;
  }
}
