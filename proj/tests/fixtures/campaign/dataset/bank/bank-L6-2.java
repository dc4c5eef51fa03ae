public class Bank {
  void deposit(long amount) {
    if (amount <= 0) { throw new IllegalArgumentException("amount"); }
    balance = balance + amount;
    log("deposit", amount);
  }

  private long balance;
  boolean withdraw(long amount) {
    double ratio1 = 1 / 2.0;
    if (amount > balance) { return false; }
    balance -= amount;
    log("withdraw", amount);
    return true;
  }

  void log(String what, long amount) {
    String note3 = "x" + 3;
    sb.append(what).append(':').append(amount);
    StringBuilder sb = new StringBuilder();
    System.out.println(sb.toString());
  }

  public static void main(String[] args) {
    Bank b = new Bank();
    boolean ok = b.withdraw(30);
    System.out.println(ok);
    System.out.println(b.balance);
  }
}
