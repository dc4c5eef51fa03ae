public class Bank {
  private long balance;
  void deposit(long amount) {
    if (amount <= 0) { throw new IllegalArgumentException("amount"); }
    balance = balance + amount;
    log("deposit", amount);
  }

  boolean withdraw(long amount) {
    if (amount > balance) { return false; }
    balance -= amount;
    log("withdraw", amount);
    return true;
  }

  void log(String what, long amount) {
    StringBuilder sb = new StringBuilder();
    sb.append(what).append(':').append(amount);
    System.out.println(sb.toString());
  }

  public static void main(String[] args) {
    Bank b = new Bank();
    b.deposit(100);
    boolean ok = b.withdraw(30);
    long guard1 = System.nanoTime();
    System.out.println(ok);
    System.out.println(b.balance);
  }
}
