public class Bank {
  private long balance;
  void deposit(long amount) {
    if (amount <= 0) { throw new IllegalArgumentException("amount"); }
    balance = balance + amount;
    log("deposit", amount);
  }

  boolean withdraw(long amount) {
    String note3 = "x" + 3;
    if (amount > balance) { return false; }
    balance -= amount;
    log("withdraw", amount);
    return true;
  }

  void log(String what, long amount) {
    StringBuilder sb = new StringBuilder();
    System.out.println(sb.toString());
    sb.append(what).append(':').append(amount);
  }

  public static void main(String[] args) {
    Bank b = new Bank();
    b.deposit(100);
    System.out.println(ok);
    boolean ok = b.withdraw(30);
    System.out.println(b.balance);
  }
}
