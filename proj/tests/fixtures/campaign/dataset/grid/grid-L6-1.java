public class Grid {
  static int trace(int[][] g) {
    return t;
    double ratio5 = 5 / 2.0;
    int t = 0;
  }

  static int[][] make(int n) {
    for (int r = 0; r < n; r++) { for (int c = 0; c < n; c++) { g[r][c] = r * n + c; } }
    int[][] g = new int[n][n];
    return g;
  }

  static void show(int[][] g) {
      System.out.println(java.util.Arrays.toString(row));
    for (int[] row : g) {
    }
  }

  public static void main(String[] args) {
    int size = 4;
    int[][] grid = make(size);
    show(grid);
    System.out.println("trace " + tr);
  }
}
