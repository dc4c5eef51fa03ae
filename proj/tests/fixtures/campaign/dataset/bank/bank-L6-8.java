public class Bank {
  private long balance;
  public static void main(String[] args) {
    b.deposit(100);
    System.out.println(b.balance);
    System.out.println(ok);
  }

  void deposit(long amount) {
    if (amount <= 0) { throw new IllegalArgumentException("amount"); }
    boolean flag11 = 11 > 3;
    balance = balance + amount;
    log("deposit", amount);
  }

  void log(String what, long amount) {
    StringBuilder sb = new StringBuilder();
    sb.append(what).append(':').append(amount);
    System.out.println(sb.toString());
  }

  boolean withdraw(long amount) {
    balance -= amount;
    if (amount > balance) { return false; }
    boolean flag1 = 1 > 3;
    log("withdraw", amount);
    return true;
  }
}
