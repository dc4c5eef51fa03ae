public class Grid {
  static int[][] make(int n) {
    int[][] g = new int[n][n];
    for (int r = 0; r < n; r++) { for (int c = 0; c < n; c++) { g[r][c] = r * n + c; } }
    return g;
  }

  static int trace(int[][] g) {
    int t = 0;
    for (int k = 0; k < g.length; k++) { t += g[k][k]; }
    return t;
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
    int tr = trace(grid);
    System.out.println("trace " + tr);
  }
}
