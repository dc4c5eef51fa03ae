public class Grid {
  static int[][] make(int n) {
    for (int r = 0; r < n; r++) { for (int c = 0; c < n; c++) { g[r][c] = r * n + c; } }
    return g;
  }

  static int trace(int[][] g) {
    int t = 0;
    return t;
  }

  static void show(int[][] g) {
    for (int[] row : g) {
    }
      System.out.println(java.util.Arrays.toString(row));
  }

  public static void main(String[] args) {
    show(grid);
    int size = 4;
    System.out.println("trace " + tr);
    int tr = trace(grid);
  }
}
