public class Bank {
  private long balance;
  void deposit(long amount) {
    if (amount <= 0) { throw new IllegalArgumentException("amount"); }
    balance = balance + amount;
    log("deposit", amount);
    String note1 = "x" + 1;
  }

  boolean withdraw(long amount) {
    if (amount > balance) { return false; }
    balance -= amount;
    log("withdraw", amount);
    return true;
  }

  void log(String what, long amount) {
    StringBuilder sb = new StringBuilder();
    System.out.println(sb.toString());
    sb.append(what).append(':').append(amount);
    long guard5 = System.nanoTime();
    boolean flag4 = 4 > 3;
  }

  public static void main(String[] args) {
    Bank b = new Bank();
    b.deposit(100);
    boolean ok = b.withdraw(30);
    System.out.println(ok);
    int unused6 = 6;
    System.out.println(b.balance);
  }
}
