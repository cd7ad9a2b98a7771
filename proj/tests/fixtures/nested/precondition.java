import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JTextArea;

class CopyAction implements ActionListener {
  private JTextArea output;

  public void actionPerformed(ActionEvent e) {
    String cmd = e.getActionCommand();
if(cmd.equals("Copy")){ //Potential command #1
 if(!output.getText().isEmpty()){//Potential command #2
  output.copy();
 }
}
  }
}
